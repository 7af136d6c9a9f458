use rayon::prelude::*;
use serde::Serialize;

use crate::galois_ring::{GaloisRing, RingElem};

use super::{DifferencePartition, SchemeError};

/// Intersection numbers of a translation scheme, certified by direct convolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scheme {
    pub n: usize,
    pub d: usize,
    pub valencies: Vec<u64>,
    pub pairing: Vec<usize>,
    // p[(i·(d+1) + j)·(d+1) + k] = p_{ij}^k
    p: Vec<u64>,
}

/// Two elements of the same class S_k that receive different convolution counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionWitness {
    pub first: (u32, u64),
    pub second: (u32, u64),
}

impl Scheme {
    pub fn intersection(&self, i: usize, j: usize, k: usize) -> u64 {
        let m = self.d + 1;
        self.p[(i * m + j) * m + k]
    }

    /// `p[i][j][k]`, for JSON output.
    pub fn intersection_numbers(&self) -> Vec<Vec<Vec<u64>>> {
        let m = self.d + 1;
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|k| self.intersection(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }

    /// Checks the standard identities among valencies and intersection numbers, returning the
    /// names of the checks that passed, or the first one that failed.
    pub fn check_axioms(&self) -> Result<Vec<&'static str>, String> {
        let m = self.d + 1;
        if self.valencies.iter().sum::<u64>() != self.n as u64 {
            return Err("valencies do not sum to n".into());
        }
        for i in 0..m {
            for j in 0..m {
                let expected = if j == self.pairing[i] {
                    self.valencies[i]
                } else {
                    0
                };
                if self.intersection(i, j, 0) != expected {
                    return Err(format!("p_{{{i},{j}}}^0 ≠ k_{i}·[j = {i}']"));
                }
                for k in 0..m {
                    if self.intersection(i, j, k) != self.intersection(j, i, k) {
                        return Err(format!("p_{{{i},{j}}}^{k} ≠ p_{{{j},{i}}}^{k}"));
                    }
                }
            }
            for k in 0..m {
                let row: u64 = (0..m).map(|j| self.intersection(i, j, k)).sum();
                if row != self.valencies[i] {
                    return Err(format!("Σ_j p_{{{i},j}}^{k} ≠ k_{i}"));
                }
            }
        }
        Ok(vec!["valency_sum", "p_ij^0", "commutativity", "row_sums"])
    }
}

/// Certifies that the partition defines an association scheme: for every pair (i, j) the
/// number of ways to write δ = β + γ with β ∈ S_i, γ ∈ S_j must be constant on each S_k.
pub fn verify_scheme(ring: &GaloisRing, part: &DifferencePartition) -> Result<Scheme, SchemeError> {
    let m = part.classes().len();
    let n = ring.n();
    let members: Vec<Vec<RingElem>> = part.classes().iter().map(|c| c.iter().collect()).collect();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();

    let results: Vec<Result<Vec<u64>, SchemeError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut counts = vec![0u32; n];
            for &beta in &members[i] {
                for &gamma in &members[j] {
                    counts[ring.add(beta, gamma).index()] += 1;
                }
            }
            let mut row = Vec::with_capacity(m);
            for (k, class) in members.iter().enumerate() {
                let first = class[0];
                let value = counts[first.index()];
                if let Some(&other) = class.iter().find(|x| counts[x.index()] != value) {
                    return Err(SchemeError::NotAScheme {
                        i,
                        j,
                        k,
                        witness: ConvolutionWitness {
                            first: (first.0, value as u64),
                            second: (other.0, counts[other.index()] as u64),
                        },
                    });
                }
                row.push(value as u64);
            }
            Ok(row)
        })
        .collect();

    let mut p = Vec::with_capacity(m * m * m);
    for r in results {
        p.extend(r?);
    }
    Ok(Scheme {
        n,
        d: m - 1,
        valencies: part.sizes().into_iter().map(|s| s as u64).collect(),
        pairing: part.pairing().to_vec(),
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class6_is_a_scheme_at_e3() {
        let r = GaloisRing::new(3, None).unwrap();
        let part = DifferencePartition::class6(&r);
        let s = verify_scheme(&r, &part).unwrap();
        assert_eq!(s.intersection(5, 5, 0), 3);
        assert_eq!(s.valencies, vec![1, 24, 24, 4, 4, 3, 4]);
        assert!(s.check_axioms().is_ok());
        // nonsymmetric: S1 pairs with S2
        assert_eq!(s.intersection(1, 2, 0), 24);
        assert_eq!(s.intersection(1, 1, 0), 0);
    }

    #[test]
    fn corrupted_partition_fails_with_witness() {
        let r = GaloisRing::new(3, None).unwrap();
        let part = DifferencePartition::class6(&r);
        let mut classes = part.classes().to_vec();
        let x = classes[5].iter().next().unwrap();
        classes[5].remove(x);
        classes[6].insert(x);
        // elements of P are their own negatives, so negation still permutes the classes
        let bad = DifferencePartition::from_classes(&r, classes).unwrap();
        match verify_scheme(&r, &bad) {
            Err(SchemeError::NotAScheme { witness, .. }) => {
                assert_ne!(witness.first.1, witness.second.1);
            }
            other => panic!("expected NotAScheme, got {other:?}"),
        }
    }
}
