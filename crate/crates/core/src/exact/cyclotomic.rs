use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactError, GaussInt, IntRepr, JsonInt};

/// Cyclotomic orders with precomputed reduction tables.
pub const SUPPORTED_ORDERS: [u32; 6] = [1, 2, 4, 8, 12, 24];

/// The cyclotomic polynomial Φ_N, coefficients listed from x⁰ upward.
pub fn cyclotomic_poly(order: u32) -> Result<Vec<i64>, ExactError> {
    if !SUPPORTED_ORDERS.contains(&order) {
        return Err(ExactError::UnsupportedOrder(order));
    }
    Ok(phi_any(order))
}

// x^N - 1 divided by Φ_d for every proper divisor d.
fn phi_any(order: u32) -> Vec<i64> {
    let mut num = vec![0i64; order as usize + 1];
    num[0] = -1;
    num[order as usize] = 1;
    for d in (1..order).filter(|d| order.is_multiple_of(*d)) {
        num = div_monic(&num, &phi_any(d));
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (t, &dc) in den.iter().enumerate() {
            rem[k + t] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Smallest supported order containing both the N-th roots of unity and i.
pub fn lcm_order(order: u32) -> Result<u32, ExactError> {
    if !SUPPORTED_ORDERS.contains(&order) {
        return Err(ExactError::UnsupportedOrder(order));
    }
    Ok(order.lcm(&4))
}

struct OrderTable {
    order: u32,
    degree: usize,
    // powers[k] = ζ^k reduced modulo Φ_N, for 0 ≤ k < N
    powers: Vec<Vec<i64>>,
}

fn table(order: u32) -> Result<&'static OrderTable, ExactError> {
    static TABLES: OnceLock<Vec<OrderTable>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| SUPPORTED_ORDERS.iter().map(|&n| build_table(n)).collect());
    tables
        .iter()
        .find(|t| t.order == order)
        .ok_or(ExactError::UnsupportedOrder(order))
}

fn build_table(order: u32) -> OrderTable {
    let phi = phi_any(order);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x, then reduce x^degree = -Σ phi[t] x^t
        let top = cur[degree - 1];
        for t in (1..degree).rev() {
            cur[t] = cur[t - 1];
        }
        cur[0] = 0;
        for t in 0..degree {
            cur[t] -= top * phi[t];
        }
    }
    OrderTable {
        order,
        degree,
        powers,
    }
}

/// An element of Z\[ζ_N\] = Z\[x\]/(Φ_N), stored as coefficients of 1, ζ, …, ζ^{deg-1}.
///
/// The representation is canonical, so equality is coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn new(order: u32, coeffs: Vec<BigInt>) -> Result<Self, ExactError> {
        let t = table(order)?;
        if coeffs.len() != t.degree {
            return Err(ExactError::BadLength {
                order,
                expected: t.degree,
                got: coeffs.len(),
            });
        }
        Ok(CycInt { order, coeffs })
    }

    pub fn zero(order: u32) -> Result<Self, ExactError> {
        let t = table(order)?;
        Ok(CycInt {
            order,
            coeffs: vec![BigInt::zero(); t.degree],
        })
    }

    pub fn from_int(order: u32, v: impl Into<BigInt>) -> Result<Self, ExactError> {
        let mut z = CycInt::zero(order)?;
        z.coeffs[0] = v.into();
        Ok(z)
    }

    pub fn one(order: u32) -> Result<Self, ExactError> {
        CycInt::from_int(order, 1)
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Result<Self, ExactError> {
        let t = table(order)?;
        let idx = k.rem_euclid(order as i64) as usize;
        Ok(CycInt {
            order,
            coeffs: t.powers[idx].iter().map(|&c| BigInt::from(c)).collect(),
        })
    }

    /// Embeds a Gaussian integer using i = ζ_N^{N/4}.
    pub fn from_gauss(order: u32, g: &GaussInt) -> Result<Self, ExactError> {
        if !order.is_multiple_of(4) {
            table(order)?;
            return Err(ExactError::NoGaussianEmbedding(order));
        }
        let mut z = CycInt::zero(order)?;
        z.coeffs[0] = g.re.clone();
        // ζ^{N/4} is a basis monomial for every supported N divisible by 4
        z.coeffs[(order / 4) as usize] += &g.im;
        Ok(z)
    }

    /// The Gaussian integer equal to `self`, if `self` lies in Z\[i\].
    pub fn to_gauss(&self) -> Option<GaussInt> {
        if !self.order.is_multiple_of(4) {
            // Z[ζ_1] = Z[ζ_2] = Z
            return Some(GaussInt::from_int(self.coeffs[0].clone()));
        }
        let q = (self.order / 4) as usize;
        let rest_zero = self
            .coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k == 0 || k == q || c.is_zero());
        rest_zero.then(|| GaussInt::new(self.coeffs[0].clone(), self.coeffs[q].clone()))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Image under ζ ↦ ζ^{N-1}, i.e. complex conjugation.
    pub fn conj(&self) -> Self {
        let t = table(self.order).expect("order validated at construction");
        let n = self.order as usize;
        let mut out = vec![BigInt::zero(); t.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&t.powers[(n - k) % n]) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        CycInt {
            order: self.order,
            coeffs: out,
        }
    }

    /// Re-expresses `self` in the larger ring Z\[ζ_M\] (requires N | M).
    pub fn embed(&self, target: u32) -> Result<Self, ExactError> {
        let t = table(target)?;
        if !target.is_multiple_of(self.order) {
            return Err(ExactError::BadEmbedding {
                from: self.order,
                to: target,
            });
        }
        let step = (target / self.order) as usize;
        let mut out = vec![BigInt::zero(); t.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&t.powers[(k * step) % target as usize]) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        Ok(CycInt {
            order: target,
            coeffs: out,
        })
    }

    /// The exponent k with `self == ζ_N^k`, if `self` is an N-th root of unity.
    pub fn root_exponent(&self) -> Option<u32> {
        let t = table(self.order).ok()?;
        t.powers
            .iter()
            .position(|p| {
                p.iter()
                    .zip(&self.coeffs)
                    .all(|(&a, b)| BigInt::from(a) == *b)
            })
            .map(|k| k as u32)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycInt::one(self.order).expect("valid order");
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn check_same(&self, other: &CycInt) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic orders differ; embed() into a common order first"
        );
    }
}

impl<'b> Add<&'b CycInt> for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &'b CycInt) -> CycInt {
        self.check_same(rhs);
        CycInt {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'b> Sub<&'b CycInt> for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &'b CycInt) -> CycInt {
        self.check_same(rhs);
        CycInt {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'b> Mul<&'b CycInt> for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &'b CycInt) -> CycInt {
        self.check_same(rhs);
        let t = table(self.order).expect("order validated at construction");
        let deg = t.degree;
        // 2·deg - 1 ≤ N for every supported order, so each raw power has a table row
        let mut raw = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigInt> = raw[..deg].to_vec();
        for (k, c) in raw.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&t.powers[k]) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        CycInt {
            order: self.order,
            coeffs: out,
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &'b CycInt) -> CycInt {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = self.to_gauss() {
            return write!(f, "{g}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·ζ{}", self.order)?,
                _ => write!(f, "{c}·ζ{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<JsonInt<'_>> = self.coeffs.iter().map(JsonInt).collect();
        let mut s = serializer.serialize_struct("CycInt", 2)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u32,
            coeffs: Vec<IntRepr>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .into_iter()
            .map(IntRepr::into_bigint)
            .collect::<Result<Vec<_>, _>>()?;
        CycInt::new(raw.order, coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2).unwrap(), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(8).unwrap(), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12).unwrap(), vec![1, 0, -1, 0, 1]);
        assert_eq!(
            cyclotomic_poly(24).unwrap(),
            vec![1, 0, 0, 0, -1, 0, 0, 0, 1]
        );
        assert_eq!(cyclotomic_poly(5), Err(ExactError::UnsupportedOrder(5)));
    }

    #[test]
    fn phi8_divides_out_lower_factors() {
        // Φ_8 · Φ_4 · Φ_2 · Φ_1 = x^8 - 1
        let mut prod = vec![1i64];
        for d in [1, 2, 4, 8] {
            let p = cyclotomic_poly(d).unwrap();
            let mut next = vec![0i64; prod.len() + p.len() - 1];
            for (i, a) in prod.iter().enumerate() {
                for (j, b) in p.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            prod = next;
        }
        assert_eq!(prod, vec![-1, 0, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn roots_of_unity_identities() {
        for &n in &SUPPORTED_ORDERS {
            let z = CycInt::zeta_pow(n, 1).unwrap();
            assert!(z.pow(n).is_one(), "ζ_{n}^{n} = 1");
            if n > 1 {
                let mut sum = CycInt::zero(n).unwrap();
                for k in 0..n {
                    sum = sum + CycInt::zeta_pow(n, k as i64).unwrap();
                }
                assert!(sum.is_zero(), "Σ ζ_{n}^k = 0");
            }
        }
    }

    #[test]
    fn order_four_matches_gaussian_integers() {
        let g = GaussInt::new(3, -5);
        let c = CycInt::from_gauss(4, &g).unwrap();
        assert_eq!(c.to_gauss(), Some(g.clone()));
        let h = GaussInt::new(-2, 7);
        let ch = CycInt::from_gauss(4, &h).unwrap();
        assert_eq!((&c * &ch).to_gauss(), Some(&g * &h));
        assert_eq!(c.conj().to_gauss(), Some(g.conj()));
        assert_eq!(
            CycInt::zeta_pow(4, 1).unwrap().to_gauss(),
            Some(GaussInt::i())
        );
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let a = CycInt::zeta_pow(4, 1).unwrap();
        let b = a.embed(24).unwrap();
        assert_eq!(b, CycInt::zeta_pow(24, 6).unwrap());
        assert_eq!(b.to_gauss(), Some(GaussInt::i()));
        assert!(a.embed(6).is_err());
        assert!(a.embed(8).unwrap().pow(4).is_one());
    }

    #[test]
    fn conjugation_inverts_roots() {
        for &n in &SUPPORTED_ORDERS {
            for k in 0..n as i64 {
                let z = CycInt::zeta_pow(n, k).unwrap();
                assert_eq!(z.conj(), CycInt::zeta_pow(n, -k).unwrap());
                assert!((&z * &z.conj()).is_one());
                assert_eq!(z.root_exponent(), Some(k as u32));
            }
        }
    }

    #[test]
    fn gaussian_embedding_needs_i() {
        assert_eq!(
            CycInt::from_gauss(2, &GaussInt::i()),
            Err(ExactError::NoGaussianEmbedding(2))
        );
        assert_eq!(lcm_order(2).unwrap(), 4);
        assert_eq!(lcm_order(12).unwrap(), 12);
        assert_eq!(lcm_order(1).unwrap(), 4);
    }

    #[test]
    fn bad_length_rejected() {
        assert!(matches!(
            CycInt::new(8, vec![BigInt::from(1)]),
            Err(ExactError::BadLength { expected: 4, .. })
        ));
    }

    #[test]
    fn json_shape() {
        let z = CycInt::zeta_pow(8, 3).unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"order":8,"coeffs":[0,0,0,1]}"#);
        assert_eq!(serde_json::from_str::<CycInt>(&s).unwrap(), z);
    }
}
