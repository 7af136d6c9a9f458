//! C ABI over `bsl-core`.
//!
//! Objects are handed out as opaque pointers and released with the matching `*_free`
//! function. Every fallible call returns a [`BslStatus`]; on failure a description is
//! available from [`bsl_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bsl_core::fusion::fusion_table;
use bsl_core::galois_ring::{GaloisRing, RingElem};
use bsl_core::hadamard::search_butson;
use bsl_core::scheme::{eigenmatrix, verify_scheme, Constancy, DifferencePartition, Eigenmatrix};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BslStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    /// A verification ran to completion and found a violation.
    CheckFailed = 3,
    OutOfRange = 4,
    Internal = 5,
}

/// A Galois ring GR(4, e) together with its class-6 partition.
pub struct BslRing {
    ring: GaloisRing,
    part: DifferencePartition,
}

/// An exact first eigenmatrix with Gaussian-integer entries.
pub struct BslEigenmatrix {
    p: Eigenmatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), (BslStatus, String)>) -> BslStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BslStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BslStatus::Internal
        }
    }
}

fn null() -> (BslStatus, String) {
    (BslStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, (BslStatus, String)> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (BslStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

/// The message for the last failed call on this thread, or NULL. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bsl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds GR(4, e). `phi2` is a GF(2) polynomial bitmask, or 0 for the default choice.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn bsl_ring_new(e: u32, phi2: u64, out: *mut *mut BslRing) -> BslStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let ring = GaloisRing::new(e, (phi2 != 0).then_some(phi2))
            .map_err(|e| (BslStatus::InvalidArgument, e.to_string()))?;
        let part = DifferencePartition::class6(&ring);
        write(out, Box::into_raw(Box::new(BslRing { ring, part })))
    })
}

/// # Safety
/// `ring` must be NULL or a pointer returned by [`bsl_ring_new`] that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn bsl_ring_free(ring: *mut BslRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live ring handle and `n` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_ring_order(ring: *const BslRing, n: *mut u64) -> BslStatus {
    guard(|| write(n, deref(ring)?.ring.n() as u64))
}

/// # Safety
/// `ring` must be a live ring handle and `b` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_ring_b(ring: *const BslRing, b: *mut u64) -> BslStatus {
    guard(|| write(b, deref(ring)?.ring.b()))
}

fn element(ring: &GaloisRing, x: u32) -> Result<RingElem, (BslStatus, String)> {
    if (x as usize) < ring.n() {
        Ok(RingElem(x))
    } else {
        Err((
            BslStatus::OutOfRange,
            format!("element {x:#x} is not below n = {}", ring.n()),
        ))
    }
}

/// Elements are packed coefficient vectors: coefficient k of ξ^k in bits 2k, 2k+1.
///
/// # Safety
/// `ring` must be a live ring handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_ring_trace(ring: *const BslRing, x: u32, out: *mut u8) -> BslStatus {
    guard(|| {
        let r = &deref(ring)?.ring;
        write(out, r.trace(element(r, x)?))
    })
}

/// # Safety
/// `ring` must be a live ring handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_ring_mul(
    ring: *const BslRing,
    x: u32,
    y: u32,
    out: *mut u32,
) -> BslStatus {
    guard(|| {
        let r = &deref(ring)?.ring;
        write(out, r.mul(element(r, x)?, element(r, y)?).0)
    })
}

/// Certifies the class-6 scheme axioms by convolution. Returns `CheckFailed` with a witness
/// message if the partition is not a scheme.
///
/// # Safety
/// `ring` must be a live ring handle.
#[no_mangle]
pub unsafe extern "C" fn bsl_scheme_verify(ring: *const BslRing) -> BslStatus {
    guard(|| {
        let h = deref(ring)?;
        let s =
            verify_scheme(&h.ring, &h.part).map_err(|e| (BslStatus::CheckFailed, e.to_string()))?;
        s.check_axioms()
            .map(|_| ())
            .map_err(|m| (BslStatus::CheckFailed, m))
    })
}

/// Computes the first eigenmatrix. `sample_per_class` = 0 checks λ-constancy on every
/// element; otherwise that many seeded random elements per class are checked.
///
/// # Safety
/// `ring` must be a live ring handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_eigenmatrix_compute(
    ring: *const BslRing,
    sample_per_class: u32,
    seed: u64,
    out: *mut *mut BslEigenmatrix,
) -> BslStatus {
    guard(|| {
        let h = deref(ring)?;
        let constancy = match sample_per_class {
            0 => Constancy::Full,
            m => Constancy::Sample {
                per_class: m as usize,
                seed,
            },
        };
        let p = eigenmatrix(&h.ring, &h.part, constancy)
            .map_err(|e| (BslStatus::CheckFailed, e.to_string()))?;
        write(out, Box::into_raw(Box::new(BslEigenmatrix { p })))
    })
}

/// # Safety
/// `p` must be NULL or a pointer from [`bsl_eigenmatrix_compute`] that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn bsl_eigenmatrix_free(p: *mut BslEigenmatrix) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of rows (d + 1).
///
/// # Safety
/// `p` must be a live eigenmatrix handle and `dim` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_eigenmatrix_dim(
    p: *const BslEigenmatrix,
    dim: *mut usize,
) -> BslStatus {
    guard(|| write(dim, deref(p)?.p.size()))
}

/// Entry (i, j) as re + im·i. Fails with `OutOfRange` for bad indices or entries that do not
/// fit in 64 bits.
///
/// # Safety
/// `p` must be a live eigenmatrix handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_eigenmatrix_entry(
    p: *const BslEigenmatrix,
    i: usize,
    j: usize,
    re: *mut i64,
    im: *mut i64,
) -> BslStatus {
    guard(|| {
        let m = &deref(p)?.p;
        if i >= m.size() || j >= m.size() {
            return Err((
                BslStatus::OutOfRange,
                format!("index ({i}, {j}) outside {0}×{0}", m.size()),
            ));
        }
        let (a, b) = m
            .get(i, j)
            .to_i64_pair()
            .ok_or_else(|| (BslStatus::OutOfRange, "entry exceeds 64 bits".to_string()))?;
        write(re, a)?;
        write(im, b)
    })
}

/// The matrix as JSON, `[[[re, im], ...], ...]`. Release with [`bsl_string_free`].
///
/// # Safety
/// `p` must be a live eigenmatrix handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_eigenmatrix_to_json(
    p: *const BslEigenmatrix,
    out: *mut *mut c_char,
) -> BslStatus {
    guard(|| {
        let s = matrix_json(&deref(p)?.p);
        write(out, CString::new(s).expect("json has no nul").into_raw())
    })
}

fn matrix_json(p: &Eigenmatrix) -> String {
    let rows: Vec<String> = p
        .rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("[{},{}]", x.re, x.im)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// # Safety
/// `s` must be NULL or a string returned by this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn bsl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of hermitian weight vectors over `roots`-th roots of unity giving a complex
/// Hadamard matrix.
///
/// # Safety
/// `p` must be a live eigenmatrix handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_butson_count(
    p: *const BslEigenmatrix,
    roots: u32,
    count: *mut usize,
) -> BslStatus {
    guard(|| {
        let sols = search_butson(&deref(p)?.p, roots)
            .map_err(|e| (BslStatus::InvalidArgument, e.to_string()))?;
        write(count, sols.len())
    })
}

/// Number of non-identity fusions with at least `min_class` classes.
///
/// # Safety
/// `p` must be a live eigenmatrix handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn bsl_fusion_count(
    p: *const BslEigenmatrix,
    min_class: usize,
    count: *mut usize,
) -> BslStatus {
    guard(|| write(count, fusion_table(&deref(p)?.p, min_class).len()))
}

/// The message of the last error as an owned Rust string, for tests.
#[doc(hidden)]
pub fn last_error() -> Option<String> {
    let p = bsl_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}
