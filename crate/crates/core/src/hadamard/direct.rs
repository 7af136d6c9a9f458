use crate::exact::CycInt;
use crate::galois_ring::GaloisRing;
use crate::scheme::DifferencePartition;

use super::{HadamardError, WeightVector};

/// A dense n×n matrix whose entries are N-th roots of unity or zero, stored as exponents
/// with [`RootMatrix::ZERO`] marking a zero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMatrix {
    order: u32,
    n: usize,
    exps: Vec<u16>,
}

impl RootMatrix {
    pub const ZERO: u16 = u16::MAX;

    pub fn new(order: u32, n: usize, exps: Vec<u16>) -> Self {
        assert_eq!(exps.len(), n * n);
        RootMatrix { order, n, exps }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        let mut exps = vec![RootMatrix::ZERO; n * n];
        (0..n).for_each(|i| exps[i * n + i] = 0);
        RootMatrix::new(order, n, exps)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponent(&self, r: usize, c: usize) -> u16 {
        self.exps[r * self.n + c]
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.order;
        (0..self.n).all(|r| {
            (0..self.n).all(|c| match (self.exponent(r, c), self.exponent(c, r)) {
                (RootMatrix::ZERO, y) => y == RootMatrix::ZERO,
                (_, RootMatrix::ZERO) => false,
                (x, y) => (x as u32 + y as u32).is_multiple_of(n),
            })
        })
    }

    /// Whether every entry is a 4th root of unity.
    pub fn is_quaternary(&self) -> bool {
        self.exps
            .iter()
            .all(|&x| x != RootMatrix::ZERO && (4 * x as u32).is_multiple_of(self.order))
    }
}

/// W = Σ_j w_j A_j, i.e. W_{α,β} = w_j for α − β ∈ S_j.
pub fn weight_matrix(
    ring: &GaloisRing,
    part: &DifferencePartition,
    w: &WeightVector,
    cap: usize,
) -> Result<RootMatrix, HadamardError> {
    let n = ring.n();
    if n > cap {
        return Err(HadamardError::CapExceeded { n, cap });
    }
    if w.len() != part.classes().len() {
        return Err(HadamardError::DimensionMismatch {
            expected: part.classes().len(),
            got: w.len(),
        });
    }
    let mut exps = vec![0u16; n * n];
    for a in ring.elements() {
        for b in ring.elements() {
            exps[a.index() * n + b.index()] = w.exponents()[part.class_of(ring.sub(a, b))] as u16;
        }
    }
    Ok(RootMatrix::new(w.order(), n, exps))
}

/// W·W̄ᵀ = n·I, computed exactly.
///
/// Each entry of the product is Σ_t ζ^{a_{rt} − a_{ct}}; the exponent differences are
/// histogrammed and the histogram is then reduced in Z\[ζ_N\]. Zero entries contribute nothing.
pub fn is_chm_direct(w: &RootMatrix, cap: usize) -> Result<bool, HadamardError> {
    let n = w.n;
    if n > cap {
        return Err(HadamardError::CapExceeded { n, cap });
    }
    let order = w.order as usize;
    let powers: Vec<Vec<i64>> = (0..order)
        .map(|h| {
            CycInt::zeta_pow(w.order, h as i64)
                .expect("supported order")
                .coeffs()
                .iter()
                .map(|c| i64::try_from(c).expect("small"))
                .collect()
        })
        .collect();
    let degree = powers[0].len();
    let mut hist = vec![0i64; order];
    let mut acc = vec![0i64; degree];
    for r in 0..n {
        let row_r = &w.exps[r * n..(r + 1) * n];
        for c in 0..n {
            let row_c = &w.exps[c * n..(c + 1) * n];
            hist.iter_mut().for_each(|h| *h = 0);
            for (&x, &y) in row_r.iter().zip(row_c) {
                if x == RootMatrix::ZERO || y == RootMatrix::ZERO {
                    continue;
                }
                hist[(x as usize + order - y as usize) % order] += 1;
            }
            acc.iter_mut().for_each(|a| *a = 0);
            for (h, &count) in hist.iter().enumerate() {
                if count != 0 {
                    for (a, &p) in acc.iter_mut().zip(&powers[h]) {
                        *a += count * p;
                    }
                }
            }
            let expected0 = if r == c { n as i64 } else { 0 };
            if acc[0] != expected0 || acc[1..].iter().any(|&a| a != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
