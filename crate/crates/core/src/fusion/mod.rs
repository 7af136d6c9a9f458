//! Fusion schemes: admissible partitions of the class indices and the Bannai–Muzychuk
//! constant-row-sum criterion applied to an exact eigenmatrix.

use serde::Serialize;

use crate::exact::GaussInt;
use crate::galois_ring::GaloisRing;
use crate::scheme::{DifferencePartition, Eigenmatrix, SchemeError};

/// A partition Λ₀ = {0}, Λ₁, …, Λ_e of {0, …, d}, closed under the class pairing.
///
/// Blocks are sorted internally and ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AdmissiblePartition {
    blocks: Vec<Vec<usize>>,
}

impl AdmissiblePartition {
    /// Normalizes `blocks` and checks admissibility against `pairing`.
    pub fn new(blocks: Vec<Vec<usize>>, pairing: &[usize]) -> Option<Self> {
        let d1 = pairing.len();
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b.first().copied());
        if blocks.first() != Some(&vec![0]) {
            return None;
        }
        let mut seen = vec![false; d1];
        for &x in blocks.iter().flatten() {
            if x >= d1 || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        if seen.contains(&false) {
            return None;
        }
        let p = AdmissiblePartition { blocks };
        p.block_pairing(pairing).map(|_| p)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// e, the number of non-trivial blocks.
    pub fn class_count(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// The blocks with more than one element, i.e. the relations actually fused.
    pub fn fused_relations(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .filter(|b| b.len() > 1)
            .cloned()
            .collect()
    }

    /// The induced involution on blocks, or `None` if some Λ′ is not a block.
    pub fn block_pairing(&self, pairing: &[usize]) -> Option<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| {
                let mut img: Vec<usize> = b.iter().map(|&i| pairing[i]).collect();
                img.sort_unstable();
                self.blocks.iter().position(|c| *c == img)
            })
            .collect()
    }

    pub fn is_symmetric(&self, pairing: &[usize]) -> bool {
        self.block_pairing(pairing)
            .is_some_and(|bp| bp.iter().enumerate().all(|(i, &j)| i == j))
    }
}

/// All admissible partitions of {0, …, d}, in lexicographic order of the restricted-growth
/// string of {1, …, d}.
pub fn enumerate_admissible(pairing: &[usize]) -> Vec<AdmissiblePartition> {
    let d = pairing.len() - 1;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; d];
    loop {
        let nblocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![vec![0]];
        blocks
            .extend((0..nblocks).map(|b| (1..=d).filter(|&x| rgs[x - 1] == b).collect::<Vec<_>>()));
        if let Some(p) = AdmissiblePartition::new(blocks, pairing) {
            out.push(p);
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    out
}

fn next_rgs(rgs: &mut [usize]) -> bool {
    for i in (1..rgs.len()).rev() {
        let max_prefix = rgs[..i].iter().max().copied().unwrap_or(0);
        if rgs[i] <= max_prefix {
            rgs[i] += 1;
            rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
    }
    false
}

/// An accepted fusion: Δ is the row partition, `fused` the eigenmatrix of the fusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionResult {
    pub partition: AdmissiblePartition,
    pub fused: Eigenmatrix,
    pub delta: Vec<Vec<usize>>,
    pub symmetric: bool,
    pub class_count: usize,
}

/// Applies the constant-row-sum criterion. Each row's signature is its vector of Λ-block sums;
/// the fusion is accepted iff there are exactly as many distinct signatures as blocks and row 0
/// has a signature of its own.
pub fn bannai_muzychuk(p: &Eigenmatrix, lambda: &AdmissiblePartition) -> Option<FusionResult> {
    let pairing = p.column_pairing()?;
    let signature = |i: usize| -> Vec<GaussInt> {
        lambda
            .blocks()
            .iter()
            .map(|b| b.iter().fold(GaussInt::zero(), |acc, &j| acc + p.get(i, j)))
            .collect()
    };
    let mut sigs: Vec<Vec<GaussInt>> = Vec::new();
    let mut delta: Vec<Vec<usize>> = Vec::new();
    for i in 0..p.size() {
        let s = signature(i);
        match sigs.iter().position(|t| *t == s) {
            Some(pos) => delta[pos].push(i),
            None => {
                sigs.push(s);
                delta.push(vec![i]);
            }
        }
    }
    if sigs.len() != lambda.blocks().len() || delta[0] != [0] {
        return None;
    }
    Some(FusionResult {
        symmetric: lambda.is_symmetric(&pairing),
        class_count: lambda.class_count(),
        partition: lambda.clone(),
        fused: Eigenmatrix::new(sigs).ok()?,
        delta,
    })
}

/// Every fusion of `p`, including the identity and those with fewer than three classes.
pub fn all_fusions(p: &Eigenmatrix) -> Vec<FusionResult> {
    let Some(pairing) = p.column_pairing() else {
        return Vec::new();
    };
    enumerate_admissible(&pairing)
        .iter()
        .filter_map(|l| bannai_muzychuk(p, l))
        .collect()
}

/// The non-identity fusions with at least `min_class` classes.
pub fn fusion_table(p: &Eigenmatrix, min_class: usize) -> Vec<FusionResult> {
    all_fusions(p)
        .into_iter()
        .filter(|f| !f.partition.is_identity() && f.class_count >= min_class)
        .collect()
}

/// A reference row of the known fusion table of the class-6 scheme.
#[derive(Clone, Copy, Debug)]
pub struct KnownFusion {
    pub name: &'static str,
    pub fused: &'static [&'static [usize]],
    pub class_count: usize,
    pub symmetric: bool,
}

pub const KNOWN_FUSIONS: [KnownFusion; 8] = [
    KnownFusion {
        name: "X1",
        fused: &[&[1, 2]],
        class_count: 5,
        symmetric: false,
    },
    KnownFusion {
        name: "X2",
        fused: &[&[3, 4]],
        class_count: 5,
        symmetric: false,
    },
    KnownFusion {
        name: "X3",
        fused: &[&[1, 2], &[3, 4]],
        class_count: 4,
        symmetric: true,
    },
    KnownFusion {
        name: "X4",
        fused: &[&[3, 4, 6]],
        class_count: 4,
        symmetric: false,
    },
    KnownFusion {
        name: "X5",
        fused: &[&[1, 2], &[3, 4], &[5, 6]],
        class_count: 3,
        symmetric: true,
    },
    KnownFusion {
        name: "X6",
        fused: &[&[1, 2, 3, 4]],
        class_count: 3,
        symmetric: true,
    },
    KnownFusion {
        name: "X7",
        fused: &[&[1, 3], &[2, 4], &[5, 6]],
        class_count: 3,
        symmetric: false,
    },
    KnownFusion {
        name: "X8",
        fused: &[&[1, 4], &[2, 3], &[5, 6]],
        class_count: 3,
        symmetric: false,
    },
];

impl KnownFusion {
    pub fn by_name(name: &str) -> Option<&'static KnownFusion> {
        KNOWN_FUSIONS
            .iter()
            .find(|k| k.name.eq_ignore_ascii_case(name))
    }

    /// The full admissible partition of {0, …, 6}.
    pub fn partition(&self) -> AdmissiblePartition {
        let mut blocks: Vec<Vec<usize>> = self.fused.iter().map(|b| b.to_vec()).collect();
        blocks.push(vec![0]);
        for i in 1..=6 {
            if !self.fused.iter().any(|b| b.contains(&i)) {
                blocks.push(vec![i]);
            }
        }
        AdmissiblePartition::new(blocks, &[0, 2, 1, 4, 3, 5, 6])
            .expect("known fusions are admissible")
    }

    pub fn matches(&self, f: &FusionResult) -> bool {
        f.partition == self.partition()
            && f.class_count == self.class_count
            && f.symmetric == self.symmetric
    }
}

impl FusionResult {
    /// The name of the matching known fusion, if any.
    pub fn known_name(&self) -> Option<&'static str> {
        KNOWN_FUSIONS
            .iter()
            .find(|k| k.matches(self))
            .map(|k| k.name)
    }

    /// The difference partition of the fused scheme.
    pub fn fused_partition(
        &self,
        ring: &GaloisRing,
        part: &DifferencePartition,
    ) -> Result<DifferencePartition, SchemeError> {
        part.fuse(ring, self.partition.blocks())
    }
}

/// Whether every class of `part` is closed under multiplication by the Teichmüller set T.
pub fn t_invariance(ring: &GaloisRing, part: &DifferencePartition) -> bool {
    let t = &ring.subsets().t;
    part.classes()
        .iter()
        .all(|c| t.iter().all(|x| ring.scale_set(x, c) == *c))
}

#[cfg(test)]
mod tests;
