use thiserror::Error;

use crate::poly::Rational;
use crate::poly::rational::format_rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad classes of failure, used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or inconsistent input data (bad JSON, invalid root system, ...).
    InvalidInput,
    /// The input is well formed but a mathematical hypothesis fails
    /// (degenerate Dunkl dimension, non-harmonic input, Laguerre pole, ...).
    Precondition,
    /// Internal invariant broken; always a bug.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: left operand has m = {left}, right operand has m = {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("axis {axis} out of range for dimension m = {m}")]
    AxisOutOfRange { axis: usize, m: usize },

    #[error("inexact division by linear form {divisor}: nonzero remainder {remainder}")]
    InexactDivision { divisor: String, remainder: String },

    #[error("operator is not degree-homogeneous on P_{degree}: monomial {monomial} maps to {image}")]
    NotHomogeneous { degree: u32, monomial: String, image: String },

    #[error("polynomial is not homogeneous: {0}")]
    InhomogeneousInput(String),

    #[error("matrix has shape {rows}x{cols}, expected {expected}")]
    MatrixShape { rows: usize, cols: usize, expected: String },

    #[error("zero vector has no reflection")]
    ZeroRoot,

    #[error("root system is not reduced: {0} and {1} are parallel")]
    NotReduced(String, String),

    #[error("root system is not closed: reflecting {root} in {mirror} gives {image}, which is not a root")]
    NotClosed { mirror: String, root: String, image: String },

    #[error("multiplicity is not orbit-constant: {first} has kappa {first_kappa} but {second} in the same orbit has kappa {second_kappa}")]
    NotOrbitConstant { first: String, first_kappa: String, second: String, second_kappa: String },

    #[error("no multiplicity given for root {0}")]
    MissingMultiplicity(String),

    #[error("multiplicity given for {0}, which is not a positive root")]
    UnknownOrbitRep(String),

    #[error("unsupported root system family `{0}` (expected one of z2, a, b, d)")]
    UnsupportedFamily(String),

    #[error("family {family} in dimension {m} needs {expected} multiplicities, got {got}")]
    MultiplicityArity { family: String, m: usize, expected: usize, got: usize },

    #[error("invalid dimension for {family}: m = {m}")]
    InvalidDimension { family: String, m: usize },

    #[error("Fischer requires μ ∉ −2ℕ, got μ = {mu}")]
    DegenerateMu { mu: String },

    #[error("projection P_{i}^{k}: factor l = {l} has vanishing denominator for μ = {mu}")]
    ProjectionDenominator { i: u32, k: u32, l: u32, mu: String },

    #[error("Laguerre parameter a = {a} is a pole of the Gamma ratio for t = {t}")]
    LaguerrePole { a: String, t: u32 },

    #[error("input is not Dunkl-harmonic: Δ_k H = {0}")]
    NotHarmonic(String),

    #[error("polynomials are not proportional: {left} vs {right}")]
    NotProportional { left: String, right: String },

    #[error("polynomial {poly} is not of the form Σ a_i |x|^(2i) H")]
    NotRadialMultiple { poly: String },

    #[error("harmonic index {index} out of range: H_{ell} has dimension {dim}")]
    HarmonicIndex { index: usize, ell: u32, dim: usize },

    #[error("weighted moments need integer multiplicities, got κ = {0}")]
    NonIntegerMultiplicity(String),

    #[error("weight does not factor over coordinates: {0}")]
    NotCoordinateGroup(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            DimensionMismatch { .. }
            | AxisOutOfRange { .. }
            | InhomogeneousInput(_)
            | MatrixShape { .. }
            | ZeroRoot
            | NotReduced(..)
            | NotClosed { .. }
            | NotOrbitConstant { .. }
            | MissingMultiplicity(_)
            | UnknownOrbitRep(_)
            | UnsupportedFamily(_)
            | MultiplicityArity { .. }
            | InvalidDimension { .. }
            | HarmonicIndex { .. }
            | Parse(_) => ErrorClass::InvalidInput,
            DegenerateMu { .. }
            | ProjectionDenominator { .. }
            | LaguerrePole { .. }
            | NotHarmonic(_)
            | NonIntegerMultiplicity(_)
            | NotCoordinateGroup(_)
            | NotProportional { .. }
            | NotRadialMultiple { .. } => ErrorClass::Precondition,
            InexactDivision { .. } | NotHomogeneous { .. } => ErrorClass::Internal,
        }
    }

    pub(crate) fn degenerate_mu(mu: &Rational) -> Self {
        Error::DegenerateMu { mu: format_rational(mu) }
    }
}
