//! Exact computations on Galois rings GR(4, e), the class-6 translation scheme they carry,
//! its fusions, and hermitian Butson-type complex Hadamard matrices in its Bose–Mesner algebra.

pub mod cli;
mod error;
pub mod exact;
pub mod fusion;
pub mod galois_ring;
pub mod hadamard;
pub mod scheme;

pub use error::{Error, Result};
