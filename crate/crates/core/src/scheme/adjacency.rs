use crate::galois_ring::{ElementSet, GaloisRing, RingElem};

use super::{DifferencePartition, Scheme, SchemeError};

/// Default ceiling on n for building dense n×n adjacency matrices.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// A dense 0/1 matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    n: usize,
    bits: Vec<u8>,
}

impl Adjacency {
    /// A_j with (A_j)_{α,β} = 1 iff α − β ∈ S_j.
    pub fn of_class(ring: &GaloisRing, part: &DifferencePartition, j: usize) -> Self {
        let n = ring.n();
        let mut bits = vec![0u8; n * n];
        for a in ring.elements() {
            for b in ring.elements() {
                if part.class_of(ring.sub(a, b)) == j {
                    bits[a.index() * n + b.index()] = 1;
                }
            }
        }
        Adjacency { n, bits }
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.bits[r * self.n + c]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut bits = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                bits[c * n + r] = self.bits[r * n + c];
            }
        }
        Adjacency { n, bits }
    }

    /// Integer product.
    pub fn product(&self, other: &Adjacency) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for r in 0..n {
            for k in 0..n {
                if self.bits[r * n + k] == 0 {
                    continue;
                }
                let row = &other.bits[k * n..(k + 1) * n];
                let dst = &mut out[r * n..(r + 1) * n];
                for (d, &v) in dst.iter_mut().zip(row) {
                    *d += v as u64;
                }
            }
        }
        out
    }
}

/// Checks the scheme axioms on explicit adjacency matrices:
/// A_iᵀ = A_{i′}, Σ_j A_j = J, and A_i A_j = Σ_k p_{ij}^k A_k for the given pairs.
pub fn check_dense(
    ring: &GaloisRing,
    part: &DifferencePartition,
    scheme: &Scheme,
    pairs: &[(usize, usize)],
    cap: usize,
) -> Result<(), SchemeError> {
    let n = ring.n();
    if n > cap {
        return Err(SchemeError::OrderCapExceeded { n, cap });
    }
    let mats: Vec<Adjacency> = (0..part.classes().len())
        .map(|j| Adjacency::of_class(ring, part, j))
        .collect();
    for (i, a) in mats.iter().enumerate() {
        if a.transpose() != mats[part.pairing()[i]] {
            return Err(SchemeError::DenseCheckFailed(format!(
                "A_{i} transposed is not A_{i}'"
            )));
        }
    }
    for idx in 0..n * n {
        let s: u32 = mats.iter().map(|m| m.bits[idx] as u32).sum();
        if s != 1 {
            return Err(SchemeError::DenseCheckFailed(
                "the A_j do not sum to J".into(),
            ));
        }
    }
    for &(i, j) in pairs {
        let prod = mats[i].product(&mats[j]);
        for (idx, &v) in prod.iter().enumerate() {
            let expected: u64 = mats
                .iter()
                .enumerate()
                .map(|(k, m)| scheme.intersection(i, j, k) * m.bits[idx] as u64)
                .sum();
            if v != expected {
                return Err(SchemeError::DenseCheckFailed(format!(
                    "A_{i} A_{j} differs from Σ_k p_{i}{j}^k A_k at ({}, {})",
                    idx / n,
                    idx % n
                )));
            }
        }
    }
    Ok(())
}

/// Connected components of the graph with α ~ β iff α − β ∈ `set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueReport {
    pub components: usize,
    pub sizes: Vec<usize>,
    /// Whether every component is a complete graph.
    pub all_cliques: bool,
}

pub fn relation_cliques(ring: &GaloisRing, set: &ElementSet) -> CliqueReport {
    let n = ring.n();
    let mut comp = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut all_cliques = true;
    for start in ring.elements() {
        if comp[start.index()] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![start];
        let mut members: Vec<RingElem> = Vec::new();
        comp[start.index()] = id;
        while let Some(x) = stack.pop() {
            members.push(x);
            for s in set.iter() {
                let y = ring.add(x, s);
                if comp[y.index()] == usize::MAX {
                    comp[y.index()] = id;
                    stack.push(y);
                }
            }
        }
        // a component is a clique iff its degree equals its size minus one
        if set.len() + 1 != members.len() {
            all_cliques = false;
        }
        sizes.push(members.len());
    }
    sizes.sort_unstable();
    CliqueReport {
        components: sizes.len(),
        sizes,
        all_cliques,
    }
}
