//! Hermitian complex Hadamard matrices W = Σ w_j A_j in a Bose–Mesner algebra.
//!
//! Everything is checked over roots of unity of a fixed order N, so a search result is a
//! root-of-unity verification, not a proof over the whole unit circle.

mod direct;
mod identities;
mod search;
mod song;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{lcm_order, CycInt, ExactError, GaussInt, QuadPoly, SUPPORTED_ORDERS};
use crate::scheme::Eigenmatrix;

pub use direct::{is_chm_direct, weight_matrix, RootMatrix};
pub use identities::{verify_identity, IdentityId, IdentityInstance, IdentityReport};
pub use search::{classify, search_butson, ButsonForm, ButsonSolution};
pub use song::{song_eigenmatrix, SongCase, SongParameters};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HadamardError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("weight vector has {got} entries, eigenmatrix needs {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weights are not hermitian: w_{index}' is not the conjugate of w_{index}")]
    NotHermitian { index: usize },
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("eigenmatrix has no conjugate-column pairing or no integral order")]
    BadEigenmatrix,
    #[error("n = {n} exceeds the dense cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("non-integral entry: {0}")]
    NonIntegral(String),
    #[error("inconsistent parameters: {0}")]
    InconsistentParameters(String),
}

/// Weights w_j = ζ_N^{exponents[j]} with w_0 = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector {
    order: u32,
    exponents: Vec<u32>,
}

impl WeightVector {
    pub fn new(order: u32, exponents: Vec<u32>) -> Result<Self, HadamardError> {
        if !SUPPORTED_ORDERS.contains(&order) {
            return Err(ExactError::UnsupportedOrder(order).into());
        }
        if exponents.first() != Some(&0) {
            return Err(HadamardError::BadWeights("w_0 must be 1".into()));
        }
        let exponents = exponents.into_iter().map(|x| x % order).collect();
        Ok(WeightVector { order, exponents })
    }

    /// All weights equal to 1.
    pub fn ones(order: u32, len: usize) -> Result<Self, HadamardError> {
        WeightVector::new(order, vec![0; len])
    }

    /// Weights given as powers of i.
    pub fn quaternary(exponents: &[u32]) -> Self {
        WeightVector::new(4, exponents.to_vec()).expect("order 4 is supported")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The same weights as exponents of ζ_M, for N | M.
    pub fn exponents_in(&self, m: u32) -> Vec<u32> {
        let step = m / self.order;
        self.exponents.iter().map(|&x| x * step).collect()
    }

    /// w as cyclotomic integers of order lcm(N, 4).
    pub fn values(&self) -> Vec<CycInt> {
        let m = lcm_order(self.order).expect("validated order");
        self.exponents_in(m)
            .into_iter()
            .map(|x| CycInt::zeta_pow(m, x as i64).expect("supported"))
            .collect()
    }

    /// Whether every weight is a 4th root of unity.
    pub fn is_quaternary(&self) -> bool {
        self.exponents.iter().all(|&x| (4 * x) % self.order == 0)
    }

    /// The weights as powers of i, when they are 4th roots of unity.
    pub fn as_quaternary(&self) -> Option<Vec<u32>> {
        self.is_quaternary()
            .then(|| self.exponents.iter().map(|&x| 4 * x / self.order).collect())
    }

    /// Human-readable weights, e.g. `(1, i, -i, 1)` or `(1, z8^3, ...)`.
    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&x| {
                let g = x.gcd(&self.order);
                let (num, den) = (x / g, self.order / g);
                match (num, den) {
                    (0, _) => "1".to_string(),
                    (1, 2) => "-1".to_string(),
                    (1, 4) => "i".to_string(),
                    (3, 4) => "-i".to_string(),
                    _ => format!("z{}^{}", self.order, x),
                }
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// The hermitian condition w_{i′} = conj(w_i) from the class pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianConstraint {
    pairing: Vec<usize>,
}

impl HermitianConstraint {
    pub fn new(pairing: Vec<usize>) -> Self {
        HermitianConstraint { pairing }
    }

    pub fn from_eigenmatrix(p: &Eigenmatrix) -> Result<Self, HadamardError> {
        p.column_pairing()
            .map(HermitianConstraint::new)
            .ok_or(HadamardError::BadEigenmatrix)
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn check(&self, w: &WeightVector) -> Result<(), HadamardError> {
        if w.len() != self.pairing.len() {
            return Err(HadamardError::DimensionMismatch {
                expected: self.pairing.len(),
                got: w.len(),
            });
        }
        let n = w.order();
        for (i, &j) in self.pairing.iter().enumerate() {
            if !(w.exponents()[i] + w.exponents()[j]).is_multiple_of(n) {
                return Err(HadamardError::NotHermitian { index: i });
            }
        }
        Ok(())
    }

    /// The free coordinates: one index per conjugate pair {i, i′} with i < i′, and each
    /// self-paired i ≥ 1.
    pub fn free_indices(&self) -> Vec<usize> {
        (1..self.pairing.len())
            .filter(|&i| i <= self.pairing[i])
            .collect()
    }

    /// Completes the free coordinates to a full hermitian weight vector.
    pub fn complete(&self, order: u32, free: &[(usize, u32)]) -> WeightVector {
        let mut exps = vec![0u32; self.pairing.len()];
        for &(i, x) in free {
            exps[i] = x % order;
            exps[self.pairing[i]] = (order - x % order) % order;
        }
        WeightVector {
            order,
            exponents: exps,
        }
    }

    /// A uniformly random hermitian weight vector over N-th roots.
    pub fn random<R: Rng>(&self, order: u32, rng: &mut R) -> WeightVector {
        let free: Vec<(usize, u32)> = self
            .free_indices()
            .into_iter()
            .map(|i| {
                let x = if self.pairing[i] == i {
                    // ±1 only; −1 exists when N is even
                    if order.is_multiple_of(2) && rng.gen_bool(0.5) {
                        order / 2
                    } else {
                        0
                    }
                } else {
                    rng.gen_range(0..order)
                };
                (i, x)
            })
            .collect();
        self.complete(order, &free)
    }
}

/// γ_k = Σ_j w_j P_{k,j}, in Z\[ζ_M\] with M = lcm(N, 4).
pub fn gamma(p: &Eigenmatrix, w: &WeightVector) -> Result<Vec<CycInt>, HadamardError> {
    if w.len() != p.size() {
        return Err(HadamardError::DimensionMismatch {
            expected: p.size(),
            got: w.len(),
        });
    }
    let m = lcm_order(w.order())?;
    let vals = w.values();
    (0..p.size())
        .map(|k| {
            let mut acc = CycInt::zero(m)?;
            for (j, v) in vals.iter().enumerate() {
                let c = p.get(k, j);
                if !c.is_zero() {
                    acc = acc + CycInt::from_gauss(m, c)? * v;
                }
            }
            Ok(acc)
        })
        .collect()
}

fn order_of(p: &Eigenmatrix) -> Result<BigInt, HadamardError> {
    p.order().ok_or(HadamardError::BadEigenmatrix)
}

/// γ_k² = n for every k ≥ 1.
pub fn is_chm_gamma(p: &Eigenmatrix, w: &WeightVector) -> Result<bool, HadamardError> {
    let n = order_of(p)?;
    let g = gamma(p, w)?;
    let target = CycInt::from_int(g[0].order(), n)?;
    Ok(g[1..].iter().all(|x| x * x == target))
}

/// The polynomials e_1, …, e_d in X_1, …, X_d (entry k−1 holds e_k), where
/// e_k = (1 + Σ_j P_{k,j} X_j)² − n.
pub fn build_e_polynomials(p: &Eigenmatrix) -> Result<Vec<QuadPoly>, HadamardError> {
    let n = order_of(p)?;
    let d = p.class_count();
    (1..=d)
        .map(|k| {
            let l = QuadPoly::linear_form(p.get(k, 0).clone(), p.row(k)[1..].to_vec());
            let sq = l.mul(&l)?;
            Ok(sq.sub(&QuadPoly::constant(d, GaussInt::from_int(n.clone())))?)
        })
        .collect()
}

/// e_k(w_1, …, w_d) = 0 for every k ≥ 1.
pub fn is_chm_ezero(p: &Eigenmatrix, w: &WeightVector) -> Result<bool, HadamardError> {
    let polys = build_e_polynomials(p)?;
    is_chm_ezero_with(&polys, w)
}

/// As [`is_chm_ezero`] with the polynomials already built.
pub fn is_chm_ezero_with(polys: &[QuadPoly], w: &WeightVector) -> Result<bool, HadamardError> {
    if w.len() != polys.len() + 1 {
        return Err(HadamardError::DimensionMismatch {
            expected: polys.len() + 1,
            got: w.len(),
        });
    }
    let vals = w.values();
    for e in polys {
        if !e.eval(&vals[1..])?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
