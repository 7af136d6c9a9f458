//! Binary polynomials packed into `u64` bitmasks (bit k = coefficient of x^k) and
//! arithmetic in GF(2^e) = GF(2)\[x\]/(φ).

pub fn degree(poly: u64) -> Option<u32> {
    (poly != 0).then(|| 63 - poly.leading_zeros())
}

/// `a·b mod φ` for `a, b` already reduced below `deg φ`.
pub fn mulmod(mut a: u64, mut b: u64, poly: u64, deg: u32) -> u64 {
    let top = 1u64 << deg;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= poly;
        }
    }
    acc
}

/// φ is primitive iff x has multiplicative order exactly 2^deg − 1 modulo φ.
///
/// If x has that order the quotient ring has 2^deg − 1 units, so it is a field and φ is
/// irreducible as well.
pub fn is_primitive(poly: u64, deg: u32) -> bool {
    if degree(poly) != Some(deg) || deg == 0 || deg > 32 || poly & 1 == 0 {
        return false;
    }
    if deg == 1 {
        // x + 1: x ≡ 1 has order 1 = 2^1 − 1
        return poly == 0b11;
    }
    let q = (1u64 << deg) - 1;
    let mut cur = 0b10u64;
    for k in 1..=q {
        if cur == 1 {
            return k == q;
        }
        cur = mulmod(cur, 0b10, poly, deg);
    }
    cur == 1
}

/// The primitive polynomial of degree `deg` with the smallest bitmask.
pub fn smallest_primitive(deg: u32) -> Option<u64> {
    if deg == 0 || deg > 32 {
        return None;
    }
    ((1u64 << deg)..(1u64 << (deg + 1))).find(|&p| is_primitive(p, deg))
}

/// The absolute trace Tr(z) = z + z² + … + z^{2^{deg−1}} ∈ GF(2).
pub fn field_trace(z: u64, poly: u64, deg: u32) -> u8 {
    let mut acc = 0u64;
    let mut cur = z;
    for _ in 0..deg {
        acc ^= cur;
        cur = mulmod(cur, cur, poly, deg);
    }
    debug_assert!(acc <= 1, "trace lands in the prime field");
    acc as u8
}
