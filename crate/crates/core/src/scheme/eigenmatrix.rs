use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::GaussInt;
use crate::galois_ring::{GaloisRing, RingElem};

use super::{ConstancyWitness, DifferencePartition, Scheme, SchemeError};

/// A first eigenmatrix P = (P_{i,j}) with exact Gaussian-integer entries.
///
/// Row 0 holds the valencies and column 0 is all ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Eigenmatrix {
    entries: Vec<Vec<GaussInt>>,
}

/// How thoroughly to check that λ_α(S_j) does not depend on the choice of α ∈ S_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constancy {
    Full,
    Sample { per_class: usize, seed: u64 },
}

impl Eigenmatrix {
    pub fn new(entries: Vec<Vec<GaussInt>>) -> Result<Self, SchemeError> {
        let m = entries.len();
        if m == 0 || entries.iter().any(|r| r.len() != m) {
            return Err(SchemeError::MalformedEigenmatrix(
                "not a non-empty square matrix".into(),
            ));
        }
        Ok(Eigenmatrix { entries })
    }

    pub fn from_i64(rows: &[Vec<(i64, i64)>]) -> Result<Self, SchemeError> {
        Eigenmatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&p| GaussInt::from(p)).collect())
                .collect(),
        )
    }

    /// The closed form of the class-6 eigenmatrix for b = 2^{e−1}:
    ///
    /// ```text
    /// 1  2b(b−1)  2b(b−1)   b    b   b−1   b
    /// 1    bi      −bi      0    0   −1    0
    /// 1   −bi       bi      0    0   −1    0
    /// 1    0        0       bi  −bi  b−1  −b
    /// 1    0        0      −bi   bi  b−1  −b
    /// 1  −2b      −2b       b    b   b−1   b
    /// 1    0        0      −b   −b   b−1   b
    /// ```
    pub fn class6_formula(b: i64) -> Self {
        let k1 = 2 * b * (b - 1);
        let rows = vec![
            vec![(1, 0), (k1, 0), (k1, 0), (b, 0), (b, 0), (b - 1, 0), (b, 0)],
            vec![(1, 0), (0, b), (0, -b), (0, 0), (0, 0), (-1, 0), (0, 0)],
            vec![(1, 0), (0, -b), (0, b), (0, 0), (0, 0), (-1, 0), (0, 0)],
            vec![(1, 0), (0, 0), (0, 0), (0, b), (0, -b), (b - 1, 0), (-b, 0)],
            vec![(1, 0), (0, 0), (0, 0), (0, -b), (0, b), (b - 1, 0), (-b, 0)],
            vec![
                (1, 0),
                (-2 * b, 0),
                (-2 * b, 0),
                (b, 0),
                (b, 0),
                (b - 1, 0),
                (b, 0),
            ],
            vec![(1, 0), (0, 0), (0, 0), (-b, 0), (-b, 0), (b - 1, 0), (b, 0)],
        ];
        Eigenmatrix::from_i64(&rows).expect("square")
    }

    /// The class-3 eigenmatrix with parameter a:
    ///
    /// ```text
    /// 1  a(2a−1)  a(2a−1)  2a−1
    /// 1    ai      −ai      −1
    /// 1   −ai       ai      −1
    /// 1   −a       −a      2a−1
    /// ```
    pub fn class3_formula(a: i64) -> Self {
        let k = a * (2 * a - 1);
        let rows = vec![
            vec![(1, 0), (k, 0), (k, 0), (2 * a - 1, 0)],
            vec![(1, 0), (0, a), (0, -a), (-1, 0)],
            vec![(1, 0), (0, -a), (0, a), (-1, 0)],
            vec![(1, 0), (-a, 0), (-a, 0), (2 * a - 1, 0)],
        ];
        Eigenmatrix::from_i64(&rows).expect("square")
    }

    /// d + 1, the number of rows.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// d, the class count.
    pub fn class_count(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussInt {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[GaussInt] {
        &self.entries[i]
    }

    pub fn rows(&self) -> &[Vec<GaussInt>] {
        &self.entries
    }

    /// The scheme order n, i.e. the sum of row 0, if it is a positive integer.
    pub fn order(&self) -> Option<BigInt> {
        let s = self.entries[0]
            .iter()
            .fold(GaussInt::zero(), |acc, x| acc + x);
        (s.is_real() && s.re.is_positive()).then_some(s.re)
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order()?.to_u64()
    }

    /// The column involution j ↦ j′ with P_{·,j′} = conj(P_{·,j}), if every column has a
    /// unique conjugate partner.
    pub fn column_pairing(&self) -> Option<Vec<usize>> {
        let m = self.size();
        (0..m)
            .map(|j| {
                let mut partners = (0..m)
                    .filter(|&jp| (0..m).all(|i| self.entries[i][jp] == self.entries[i][j].conj()));
                let first = partners.next()?;
                partners.next().is_none().then_some(first)
            })
            .collect()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().flatten().all(GaussInt::is_real)
    }

    /// Structural checks: square, column 0 all ones, row 0 real and positive.
    pub fn check_shape(&self) -> Result<(), SchemeError> {
        if self.entries.iter().any(|r| r[0] != GaussInt::one()) {
            return Err(SchemeError::MalformedEigenmatrix(
                "column 0 is not all ones".into(),
            ));
        }
        if self.entries[0]
            .iter()
            .any(|v| !v.is_real() || !v.re.is_positive())
        {
            return Err(SchemeError::MalformedEigenmatrix(
                "row 0 is not positive".into(),
            ));
        }
        Ok(())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over Z\[i\].
    pub fn determinant(&self) -> GaussInt {
        let m = self.size();
        let mut a = self.entries.clone();
        let mut sign = false;
        let mut prev = GaussInt::one();
        for k in 0..m {
            if a[k][k].is_zero() {
                match (k + 1..m).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return GaussInt::zero(),
                }
            }
            for i in k + 1..m {
                for j in k + 1..m {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = GaussInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[m - 1][m - 1].clone();
        if sign {
            -det
        } else {
            det
        }
    }

    /// Verifies P_{·,j} ∘ P_{·,k} = Σ_l p_{jk}^l P_{·,l} for all j, k. Returns the first
    /// failing (j, k, row) triple.
    pub fn check_intersection_consistency(
        &self,
        scheme: &Scheme,
    ) -> Result<(), (usize, usize, usize)> {
        let m = self.size();
        for j in 0..m {
            for k in 0..m {
                for row in 0..m {
                    let lhs = self.get(row, j) * self.get(row, k);
                    let rhs = (0..m).fold(GaussInt::zero(), |acc, l| {
                        acc + self
                            .get(row, l)
                            .scale(&BigInt::from(scheme.intersection(j, k, l)))
                    });
                    if lhs != rhs {
                        return Err((j, k, row));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Computes P with p_{i,j} = λ_α(S_j) for a representative α ∈ S_i and checks that the value
/// does not depend on the representative.
///
/// The representative of S_i is its least element in [`GaloisRing::canonical_key`] order.
pub fn eigenmatrix(
    ring: &GaloisRing,
    part: &DifferencePartition,
    constancy: Constancy,
) -> Result<Eigenmatrix, SchemeError> {
    let classes = part.classes();
    let row_for = |alpha: RingElem| -> Vec<GaussInt> {
        let ch = ring.character(alpha);
        classes.iter().map(|c| ch.sum_over(c)).collect()
    };

    let mut entries = Vec::with_capacity(classes.len());
    for (i, class) in classes.iter().enumerate() {
        let members: Vec<RingElem> = class.iter().collect();
        let rep = *members
            .iter()
            .min_by_key(|&&x| ring.canonical_key(x))
            .expect("classes are nonempty");
        let row = row_for(rep);

        let to_check: Vec<RingElem> = match constancy {
            Constancy::Full => members,
            Constancy::Sample { per_class, seed } => {
                if per_class >= members.len() {
                    members
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(
                        seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
                    );
                    members
                        .choose_multiple(&mut rng, per_class)
                        .copied()
                        .collect()
                }
            }
        };
        let mismatch = to_check
            .par_iter()
            .map(|&alpha| {
                let other = row_for(alpha);
                other
                    .iter()
                    .zip(&row)
                    .position(|(x, y)| x != y)
                    .map(|j| (alpha, j, other[j].clone()))
            })
            .find_first(Option::is_some)
            .flatten();
        if let Some((alpha, j, value)) = mismatch {
            return Err(SchemeError::NotConstant(Box::new(ConstancyWitness {
                i,
                j,
                alpha1: rep.0,
                alpha2: alpha.0,
                value1: row[j].clone(),
                value2: value,
            })));
        }
        entries.push(row);
    }
    Eigenmatrix::new(entries)
}
