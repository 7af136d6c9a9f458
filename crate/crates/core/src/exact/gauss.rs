use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{IntRepr, JsonInt};

/// An element `re + im·i` of the Gaussian integers Z\[i\].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn from_int(re: impl Into<BigInt>) -> Self {
        GaussInt::new(re, 0)
    }

    pub fn zero() -> Self {
        GaussInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    /// `i^k` for any integer exponent.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// The norm `re² + im²`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GaussInt {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in Z\[i\].
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &d.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussInt { re: qr, im: qi })
        } else {
            None
        }
    }

    /// Both components as `i64`, if they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }

    /// The exponent `k` with `self == i^k`, if `self` is a 4th root of unity.
    pub fn unit_exponent(&self) -> Option<u32> {
        match self.to_i64_pair()? {
            (1, 0) => Some(0),
            (0, 1) => Some(1),
            (-1, 0) => Some(2),
            (0, -1) => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_abs = self.im.abs();
        let im_part = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{im_abs}i")
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_part}")
            } else {
                write!(f, "{im_part}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{im_part}", self.re)
        }
    }
}

impl From<i64> for GaussInt {
    fn from(v: i64) -> Self {
        GaussInt::from_int(v)
    }
}

impl From<(i64, i64)> for GaussInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussInt::new(re, im)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b GaussInt> for &'a GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: &'b GaussInt) -> GaussInt {
                let f: fn(&GaussInt, &GaussInt) -> GaussInt = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: GaussInt) -> GaussInt {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: &'b GaussInt) -> GaussInt {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<GaussInt> for &'a GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: GaussInt) -> GaussInt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussInt {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
forward_binop!(Sub, sub, |a, b| GaussInt {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
forward_binop!(Mul, mul, |a, b| GaussInt {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl AddAssign<&GaussInt> for GaussInt {
    fn add_assign(&mut self, rhs: &GaussInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussInt> for GaussInt {
    fn sub_assign(&mut self, rhs: &GaussInt) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

// JSON form is `[re, im]`. Components that overflow i64 are written as decimal strings.
impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (JsonInt(&self.re), JsonInt(&self.im)).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (re, im): (IntRepr, IntRepr) = Deserialize::deserialize(deserializer)?;
        Ok(GaussInt {
            re: re.into_bigint()?,
            im: im.into_bigint()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(GaussInt::i() * GaussInt::i(), GaussInt::new(-1, 0));
    }

    #[test]
    fn conjugate_flips_imaginary_part() {
        assert_eq!(GaussInt::new(3, 4).conj(), GaussInt::new(3, -4));
    }

    #[test]
    fn product_with_conjugate_is_norm() {
        let a = GaussInt::new(1, 1);
        assert_eq!(&a * &a.conj(), GaussInt::new(2, 0));
        assert_eq!(a.norm(), BigInt::from(2));
    }

    #[test]
    fn powers_of_i_cycle() {
        assert_eq!(GaussInt::i_pow(-1), GaussInt::new(0, -1));
        assert_eq!(GaussInt::i_pow(6), GaussInt::new(-1, 0));
        for k in 0..4 {
            assert_eq!(GaussInt::i_pow(k).unit_exponent(), Some(k as u32));
        }
    }

    #[test]
    fn exact_division() {
        let a = GaussInt::new(3, 1);
        let b = GaussInt::new(1, -2);
        let p = &a * &b;
        assert_eq!(p.div_exact(&b), Some(a));
        assert_eq!(GaussInt::new(1, 0).div_exact(&GaussInt::new(1, 1)), None);
        assert_eq!(GaussInt::one().div_exact(&GaussInt::zero()), None);
    }

    #[test]
    fn display() {
        assert_eq!(GaussInt::new(0, 4).to_string(), "4i");
        assert_eq!(GaussInt::new(-8, 0).to_string(), "-8");
        assert_eq!(GaussInt::new(1, -1).to_string(), "1-i");
        assert_eq!(GaussInt::new(0, -1).to_string(), "-i");
    }

    #[test]
    fn json_is_pair_of_integers() {
        let g = GaussInt::new(-3, 7);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, "[-3,7]");
        assert_eq!(serde_json::from_str::<GaussInt>(&s).unwrap(), g);
        let big = GaussInt::new(BigInt::from(i64::MAX) * 4, 0);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<GaussInt>(&s).unwrap(), big);
    }
}
