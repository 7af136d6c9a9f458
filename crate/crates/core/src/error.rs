use thiserror::Error;

use crate::exact::ExactError;
use crate::galois_ring::RingError;
use crate::hadamard::HadamardError;
use crate::scheme::SchemeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
