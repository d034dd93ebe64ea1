//! Exact construction and verification of the algebraic objects of the
//! massive vector field carrying spins 0 and 1: the 11-component wave
//! matrices, energy and spin projectors with their dyad factorization, the
//! momentum-space canonical formalism with U(3,1) charges, the truncated
//! indefinite-metric Fock quantization and its electromagnetic U(2) limit.
//!
//! All arithmetic is over the Gaussian rationals; no floating point is used.

pub mod canonical;
pub mod em;
pub mod epsilon;
pub mod error;
pub mod fock;
pub mod jet;
pub mod matrix;
pub mod poly;
pub mod projectors;
pub mod scalar;
pub mod verify;
pub mod wave;

pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use scalar::GaussianRational;
