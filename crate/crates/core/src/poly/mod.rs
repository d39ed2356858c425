//! Exact polynomial arithmetic and the graded linear algebra built on it.

pub mod json;
pub mod linalg;
pub mod monomial;
pub mod polynomial;
pub mod rational;

pub use linalg::{materialize_on_degree, rank, rational_nullspace, Matrix, OperatorMatrix};
pub use monomial::{dim_homogeneous, Monomial};
pub use polynomial::Polynomial;
pub use rational::Rational;
