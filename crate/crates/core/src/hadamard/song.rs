use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use serde::Serialize;

use crate::exact::GaussInt;
use crate::scheme::Eigenmatrix;

use super::HadamardError;

/// The three parameter families for a class-3 scheme with pairing 1 ↔ 2 and valencies
/// k₁/2, k₁/2, k₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SongCase {
    /// (r, s, b²) = (0, −(k₂+1), k₁(k₂+1)/k₂)
    I,
    /// (r, s, b²) = (−(k₂+1), 0, (1+k₂)(1+k₁+k₂))
    II,
    /// (r, s, b²) = (−1, k₁, k₁+1)
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SongParameters {
    pub case: SongCase,
    pub k1: i64,
    pub k2: i64,
    pub r: i64,
    pub s: i64,
    pub b_squared: i64,
}

impl SongParameters {
    pub fn new(case: SongCase, k1: i64, k2: i64) -> Result<Self, HadamardError> {
        if k1 <= 0 || k2 <= 0 {
            return Err(HadamardError::InconsistentParameters(format!(
                "valencies must be positive (k1 = {k1}, k2 = {k2})"
            )));
        }
        let (r, s, b_squared) = match case {
            SongCase::I => {
                let num = k1 * (k2 + 1);
                if num % k2 != 0 {
                    return Err(HadamardError::InconsistentParameters(format!(
                        "k2 = {k2} does not divide k1(k2+1) = {num}"
                    )));
                }
                (0, -(k2 + 1), num / k2)
            }
            SongCase::II => (-(k2 + 1), 0, (1 + k2) * (1 + k1 + k2)),
            SongCase::III => (-1, k1, k1 + 1),
        };
        Ok(SongParameters {
            case,
            k1,
            k2,
            r,
            s,
            b_squared,
        })
    }

    /// Case (i) with (k₁, k₂) = (2a(2a−1), 2a−1), which yields b = 2a.
    pub fn from_a(a: i64) -> Result<Self, HadamardError> {
        SongParameters::new(SongCase::I, 2 * a * (2 * a - 1), 2 * a - 1)
    }

    /// b, when b² is a perfect square.
    pub fn b(&self) -> Option<i64> {
        let b = self.b_squared.sqrt();
        (b * b == self.b_squared).then_some(b)
    }
}

fn half(x: &GaussInt, what: &str) -> Result<GaussInt, HadamardError> {
    let two = BigInt::from(2);
    if x.re.is_odd() || x.im.is_odd() {
        return Err(HadamardError::NonIntegral(format!("{what} = ({x})/2")));
    }
    Ok(GaussInt::new(x.re.div_floor(&two), x.im.div_floor(&two)))
}

/// The 4×4 matrix
///
/// ```text
/// 1    k1/2       k1/2      k2
/// 1  (r+bi)/2   (r−bi)/2   −(r+1)
/// 1  (r−bi)/2   (r+bi)/2   −(r+1)
/// 1    s/2        s/2      −(s+1)
/// ```
pub fn song_eigenmatrix(params: &SongParameters) -> Result<Eigenmatrix, HadamardError> {
    let b = params.b().ok_or_else(|| {
        HadamardError::NonIntegral(format!("b² = {} is not a perfect square", params.b_squared))
    })?;
    let g = |re: i64, im: i64| GaussInt::new(re, im);
    let k1h = half(&g(params.k1, 0), "k1/2")?;
    let rp = half(&g(params.r, b), "r+bi")?;
    let rm = rp.conj();
    let sh = half(&g(params.s, 0), "s/2")?;
    let rows = vec![
        vec![GaussInt::one(), k1h.clone(), k1h, g(params.k2, 0)],
        vec![
            GaussInt::one(),
            rp.clone(),
            rm.clone(),
            g(-(params.r + 1), 0),
        ],
        vec![GaussInt::one(), rm, rp, g(-(params.r + 1), 0)],
        vec![GaussInt::one(), sh.clone(), sh, g(-(params.s + 1), 0)],
    ];
    Eigenmatrix::new(rows).map_err(|e| HadamardError::InconsistentParameters(e.to_string()))
}
