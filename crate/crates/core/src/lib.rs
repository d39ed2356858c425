//! Exact Dunkl operator calculus on finite reflection groups.
//!
//! Everything is computed over arbitrary-precision rationals: Dunkl operators and
//! the Dunkl Laplacian, the Clifford-valued Dunkl Dirac operator, Fischer
//! decompositions into Dunkl-harmonics, Clifford–Hermite polynomials by three
//! independent constructions, Rösler's generalized Hermite polynomials, and
//! weighted Gaussian moments for `Z_2^m`. The [`verify`] module turns the
//! identities relating them into exact, residual-reporting suites.

pub mod calculus;
pub mod clifford;
pub mod error;
pub mod groups;
pub mod hermite;
pub mod moments;
pub mod poly;
pub mod verify;

pub use error::{Error, ErrorClass, Result};
