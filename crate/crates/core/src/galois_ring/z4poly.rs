//! Dense polynomials over Z/4Z, coefficients from x⁰ upward.

pub fn trim(mut p: Vec<u8>) -> Vec<u8> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub fn mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % 4;
        }
    }
    trim(out)
}

/// Remainder of `num` modulo a monic `den`.
pub fn rem_monic(num: &[u8], den: &[u8]) -> Vec<u8> {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    let mut r = num.to_vec();
    if r.len() <= dn {
        return trim(r);
    }
    for k in (dn..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for (t, &d) in den.iter().enumerate() {
            let idx = k - dn + t;
            r[idx] = (r[idx] + 4 * 4 - c * d) % 4;
        }
    }
    r.truncate(dn.max(1));
    trim(r)
}

/// The binary polynomial `mask` with coefficients read as 0/1 in Z/4Z.
pub fn from_gf2(mask: u64) -> Vec<u8> {
    let deg = 63 - mask.leading_zeros() as usize;
    (0..=deg).map(|k| ((mask >> k) & 1) as u8).collect()
}

/// The monic lift Φ with Φ(x²) = ±φ(x)·φ(−x) (mod 4).
///
/// The product φ(x)φ(−x) only has even powers of x; reading off every other coefficient
/// and fixing the sign so the result is monic gives Φ.
pub fn graeffe_lift(phi2_mask: u64) -> Vec<u8> {
    let phi = from_gf2(phi2_mask);
    let phi_neg: Vec<u8> = phi
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 1 { (4 - c) % 4 } else { c })
        .collect();
    let prod = mul(&phi, &phi_neg);
    debug_assert!(prod.iter().skip(1).step_by(2).all(|&c| c == 0));
    let even: Vec<u8> = prod.iter().step_by(2).copied().collect();
    let lead = *even.last().unwrap();
    // lead is ±1 mod 4
    let sign = if lead == 1 { 1 } else { 3 };
    even.iter().map(|&c| (c * sign) % 4).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_of_x3_x_1() {
        assert_eq!(graeffe_lift(0b1011), vec![3, 1, 2, 1]);
    }

    #[test]
    fn lift_divides_x7_minus_1() {
        for mask in [0b1011u64, 0b1101] {
            let lift = graeffe_lift(mask);
            let mut x7m1 = vec![0u8; 8];
            x7m1[0] = 3;
            x7m1[7] = 1;
            assert_eq!(rem_monic(&x7m1, &lift), vec![0]);
        }
    }

    #[test]
    fn remainder_by_monic() {
        // x^2 + 1 divided by x + 1 leaves 2
        assert_eq!(rem_monic(&[1, 0, 1], &[1, 1]), vec![2]);
        assert_eq!(rem_monic(&[3], &[1, 1]), vec![3]);
    }
}
