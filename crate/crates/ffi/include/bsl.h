#ifndef BSL_H
#define BSL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible function.
 */
typedef enum BslStatus {
  BSL_STATUS_OK = 0,
  BSL_STATUS_INVALID_ARGUMENT = 1,
  BSL_STATUS_NULL_POINTER = 2,
  /*
   A verification ran to completion and found a violation.
   */
  BSL_STATUS_CHECK_FAILED = 3,
  BSL_STATUS_OUT_OF_RANGE = 4,
  BSL_STATUS_INTERNAL = 5,
} BslStatus;

/*
 An exact first eigenmatrix with Gaussian-integer entries.
 */
typedef struct BslEigenmatrix BslEigenmatrix;

/*
 A Galois ring GR(4, e) together with its class-6 partition.
 */
typedef struct BslRing BslRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The message for the last failed call on this thread, or NULL. The pointer stays valid
 until the next failing call on the same thread.
 */
const char *bsl_last_error_message(void);

/*
 Builds GR(4, e). `phi2` is a GF(2) polynomial bitmask, or 0 for the default choice.

 # Safety
 `out` must be a valid pointer to writable storage for one pointer.
 */
enum BslStatus bsl_ring_new(uint32_t e, uint64_t phi2, struct BslRing **out);

/*
 # Safety
 `ring` must be NULL or a pointer returned by [`bsl_ring_new`] that was not freed yet.
 */
void bsl_ring_free(struct BslRing *ring);

/*
 # Safety
 `ring` must be a live ring handle and `n` writable.
 */
enum BslStatus bsl_ring_order(const struct BslRing *ring, uint64_t *n);

/*
 # Safety
 `ring` must be a live ring handle and `b` writable.
 */
enum BslStatus bsl_ring_b(const struct BslRing *ring, uint64_t *b);

/*
 Elements are packed coefficient vectors: coefficient k of ξ^k in bits 2k, 2k+1.

 # Safety
 `ring` must be a live ring handle and `out` writable.
 */
enum BslStatus bsl_ring_trace(const struct BslRing *ring, uint32_t x, uint8_t *out);

/*
 # Safety
 `ring` must be a live ring handle and `out` writable.
 */
enum BslStatus bsl_ring_mul(const struct BslRing *ring, uint32_t x, uint32_t y, uint32_t *out);

/*
 Certifies the class-6 scheme axioms by convolution. Returns `CheckFailed` with a witness
 message if the partition is not a scheme.

 # Safety
 `ring` must be a live ring handle.
 */
enum BslStatus bsl_scheme_verify(const struct BslRing *ring);

/*
 Computes the first eigenmatrix. `sample_per_class` = 0 checks λ-constancy on every
 element; otherwise that many seeded random elements per class are checked.

 # Safety
 `ring` must be a live ring handle and `out` writable.
 */
enum BslStatus bsl_eigenmatrix_compute(const struct BslRing *ring,
                                       uint32_t sample_per_class,
                                       uint64_t seed,
                                       struct BslEigenmatrix **out);

/*
 # Safety
 `p` must be NULL or a pointer from [`bsl_eigenmatrix_compute`] that was not freed yet.
 */
void bsl_eigenmatrix_free(struct BslEigenmatrix *p);

/*
 Number of rows (d + 1).

 # Safety
 `p` must be a live eigenmatrix handle and `dim` writable.
 */
enum BslStatus bsl_eigenmatrix_dim(const struct BslEigenmatrix *p, uintptr_t *dim);

/*
 Entry (i, j) as re + im·i. Fails with `OutOfRange` for bad indices or entries that do not
 fit in 64 bits.

 # Safety
 `p` must be a live eigenmatrix handle; `re` and `im` writable.
 */
enum BslStatus bsl_eigenmatrix_entry(const struct BslEigenmatrix *p,
                                     uintptr_t i,
                                     uintptr_t j,
                                     int64_t *re,
                                     int64_t *im);

/*
 The matrix as JSON, `[[[re, im], ...], ...]`. Release with [`bsl_string_free`].

 # Safety
 `p` must be a live eigenmatrix handle and `out` writable.
 */
enum BslStatus bsl_eigenmatrix_to_json(const struct BslEigenmatrix *p, char **out);

/*
 # Safety
 `s` must be NULL or a string returned by this library that was not freed yet.
 */
void bsl_string_free(char *s);

/*
 Number of hermitian weight vectors over `roots`-th roots of unity giving a complex
 Hadamard matrix.

 # Safety
 `p` must be a live eigenmatrix handle and `count` writable.
 */
enum BslStatus bsl_butson_count(const struct BslEigenmatrix *p, uint32_t roots, uintptr_t *count);

/*
 Number of non-identity fusions with at least `min_class` classes.

 # Safety
 `p` must be a live eigenmatrix handle and `count` writable.
 */
enum BslStatus bsl_fusion_count(const struct BslEigenmatrix *p,
                                uintptr_t min_class,
                                uintptr_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BSL_H */
