//! Exact computations on Lie algebras: classical simple algebras with
//! rational matrix bases, invariant polynomials, Chevalley-Eilenberg
//! cohomology, higher-order multibrackets, BRST operators and Poisson
//! multivector fields.
//!
//! All arithmetic is over the Gaussian rationals; no floating point is
//! used anywhere in the library.

pub mod error;
pub mod linalg;
pub mod tensor_core;
pub mod brst;
pub mod ce_cohomology;
pub mod invariants;
pub mod lie_algebras;
pub mod multibrackets;
pub mod poisson_multivectors;
pub mod verdict;

pub use error::Error;
pub use linalg::Matrix;
pub use tensor_core::{AltTensor, Rational, Scalar, SymTensor, Tensor};
pub use verdict::{Residual, Witness};
