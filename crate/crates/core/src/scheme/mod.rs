//! Translation schemes on GR(4, e) defined by partitions of the ring.

mod adjacency;
mod eigenmatrix;
mod partition;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::exact::GaussInt;

pub use adjacency::{check_dense, relation_cliques, Adjacency, CliqueReport, DEFAULT_DENSE_CAP};
pub use eigenmatrix::{eigenmatrix, Constancy, Eigenmatrix};
pub use partition::DifferencePartition;
pub use verify::{verify_scheme, ConvolutionWitness, Scheme};

/// Two representatives α₁, α₂ of S_i with λ_{α₁}(S_j) ≠ λ_{α₂}(S_j).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstancyWitness {
    pub i: usize,
    pub j: usize,
    pub alpha1: u32,
    pub alpha2: u32,
    pub value1: GaussInt,
    pub value2: GaussInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("the negative of class {0} is not a class")]
    NotClosedUnderNegation(usize),
    #[error(
        "not a scheme: p_{{{i},{j}}}^{k} takes value {} at {:#x} but {} at {:#x}",
        witness.first.1, witness.first.0, witness.second.1, witness.second.0
    )]
    NotAScheme {
        i: usize,
        j: usize,
        k: usize,
        witness: ConvolutionWitness,
    },
    #[error(
        "λ_α(S_{}) is not constant on S_{}: {} at {:#x}, {} at {:#x}",
        .0.j, .0.i, .0.value1, .0.alpha1, .0.value2, .0.alpha2
    )]
    NotConstant(Box<ConstancyWitness>),
    #[error("malformed eigenmatrix: {0}")]
    MalformedEigenmatrix(String),
    #[error("dense check failed: {0}")]
    DenseCheckFailed(String),
    #[error("n = {n} exceeds the dense cap {cap}")]
    OrderCapExceeded { n: usize, cap: usize },
}
