//! Harmonics, Fischer decomposition and generalized Hermite polynomials.

pub mod construct;
pub mod harmonic;
pub mod rosler;

pub use construct::{
    ch_laguerre, ch_oscillator, ch_recursion, ch_rodrigues, coefficient_recursions_check, laguerre_poly,
    Construction, HermiteRecord, RecursionVerdict,
};
pub use harmonic::{
    fischer_basis, fischer_decompose, fischer_project, harmonic_basis, laplace_beltrami_eigenvalue,
    FischerComponent, HarmonicBasis,
};
pub use rosler::{
    eigen_residual, eigenspace_checks, proportionality_constant, rosler_hermite, weighted_eigenfunction_check,
    EigenspaceVerdict, WeightedFunction,
};
