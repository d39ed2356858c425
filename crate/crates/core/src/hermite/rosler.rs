//! Rösler's generalized Hermite polynomials `2^n e^{−Δ_k/4} p` and their
//! relation to the Clifford–Hermite family.

use serde::Serialize;

use super::construct::ch_recursion;
use super::harmonic::{fischer_basis, harmonic_basis, require_harmonic};
use crate::calculus::DunklContext;
use crate::error::{Error, Result};
use crate::poly::linalg::{rank, Matrix};
use crate::poly::rational::{int, pow, rat, Rational};
use crate::poly::{dim_homogeneous, Monomial, Polynomial};

/// `p · e^{c|x|²}`, kept as its polynomial part and Gaussian rate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFunction {
    pub polynomial_part: Polynomial,
    pub gaussian_rate: Rational,
}

impl WeightedFunction {
    pub fn new(polynomial_part: Polynomial, gaussian_rate: Rational) -> Self {
        WeightedFunction { polynomial_part, gaussian_rate }
    }

    /// Hermite function `q e^{−|x|²/2}`.
    pub fn hermite_function(q: Polynomial) -> Self {
        Self::new(q, rat(-1, 2))
    }

    pub fn dunkl(&self, ctx: &DunklContext, axis: usize) -> Result<Self> {
        let p = ctx.conjugated_dunkl(&self.gaussian_rate, axis, &self.polynomial_part)?;
        Ok(Self::new(p, self.gaussian_rate.clone()))
    }

    pub fn laplacian(&self, ctx: &DunklContext) -> Result<Self> {
        let p = ctx.conjugated_laplacian(&self.gaussian_rate, &self.polynomial_part)?;
        Ok(Self::new(p, self.gaussian_rate.clone()))
    }

    pub fn mul_polynomial(&self, q: &Polynomial) -> Self {
        Self::new(q * &self.polynomial_part, self.gaussian_rate.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.polynomial_part.scale(c), self.gaussian_rate.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.gaussian_rate, other.gaussian_rate, "Gaussian rates differ");
        Self::new(&self.polynomial_part - &other.polynomial_part, self.gaussian_rate.clone())
    }
}

/// `H = 2^n e^{−Δ_k/4} p` for homogeneous `p` of degree `n`.
pub fn rosler_hermite(ctx: &DunklContext, p: &Polynomial) -> Result<Polynomial> {
    let Some(n) = p.homogeneous_degree()? else {
        return Ok(Polynomial::zero(ctx.dim()));
    };
    Ok(ctx.heat_semigroup(p)?.scale(&pow(&int(2), n)))
}

/// `(Δ_k − 2𝔼)q + 2n q`; zero iff `q` lies in the `−2n` eigenspace.
pub fn eigen_residual(ctx: &DunklContext, n: u32, q: &Polynomial) -> Result<Polynomial> {
    let lhs = ctx.laplacian(q)? - q.euler().scale(&int(2));
    Ok(lhs + q.scale(&int(2 * n as i64)))
}

/// One failed eigen-equation: the candidate and its exact residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenFailure {
    pub label: String,
    pub candidate: Polynomial,
    pub residual: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenspaceVerdict {
    pub n: u32,
    pub dim: usize,
    pub rosler_rank: usize,
    pub ch_rank: usize,
    pub combined_rank: usize,
    pub failures: Vec<EigenFailure>,
}

impl EigenspaceVerdict {
    /// Both families lie in the eigenspace and span the same `dim P_n`-dimensional space.
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
            && self.rosler_rank == self.dim
            && self.ch_rank == self.dim
            && self.combined_rank == self.dim
    }
}

/// `{CH_{2t}^μ(H) : 2t + ℓ = n, H ∈ canonical H_ℓ}` as `(t, ℓ, index, polynomial)`.
pub fn ch_family(ctx: &DunklContext, n: u32) -> Result<Vec<(u32, u32, usize, Polynomial)>> {
    let mut out = Vec::new();
    for t in 0..=n / 2 {
        let ell = n - 2 * t;
        for (idx, h) in harmonic_basis(ctx, ell)?.elements.iter().enumerate() {
            out.push((t, ell, idx, ch_recursion(ctx, t, h)?.polynomial));
        }
    }
    Ok(out)
}

/// Checks that Rösler's polynomials on the monomial basis of `P_n` and the
/// Clifford–Hermite polynomials of total degree `n` are `−2n` eigenvectors of
/// `Δ_k − 2𝔼` and span the same space.
pub fn eigenspace_checks(ctx: &DunklContext, n: u32) -> Result<EigenspaceVerdict> {
    let m = ctx.dim();
    let mut failures = Vec::new();
    let rosler: Vec<Polynomial> = Monomial::of_degree(m, n)
        .into_iter()
        .map(|mono| {
            let p = Polynomial::term(mono.clone(), Rational::from_integer(1.into()));
            let q = rosler_hermite(ctx, &p)?;
            let r = eigen_residual(ctx, n, &q)?;
            if !r.is_zero() {
                failures.push(EigenFailure { label: format!("rosler({mono})"), candidate: q.clone(), residual: r });
            }
            Ok(q)
        })
        .collect::<Result<_>>()?;
    let mut chs = Vec::new();
    for (t, ell, idx, q) in ch_family(ctx, n)? {
        let r = eigen_residual(ctx, n, &q)?;
        if !r.is_zero() {
            failures.push(EigenFailure { label: format!("CH(t={t}, ell={ell}, h={idx})"), candidate: q.clone(), residual: r });
        }
        chs.push(q);
    }
    let basis = Monomial::up_to_degree(m, n);
    let to_matrix = |qs: &[Polynomial]| {
        let cols: Vec<Vec<Rational>> = qs.iter().map(|q| q.coefficients_in(&basis)).collect();
        Matrix::from_columns(basis.len(), &cols)
    };
    let combined: Vec<Polynomial> = rosler.iter().chain(&chs).cloned().collect();
    Ok(EigenspaceVerdict {
        n,
        dim: dim_homogeneous(m, n),
        rosler_rank: rank(&to_matrix(&rosler)),
        ch_rank: rank(&to_matrix(&chs)),
        combined_rank: rank(&to_matrix(&combined)),
        failures,
    })
}

/// The scalar `c` with `2^n e^{−Δ_k/4}(|x|^{2i} H) = c · CH_{2i}^μ(H)`, `H ∈ H_{n−2i}`.
pub fn proportionality_constant(ctx: &DunklContext, i: u32, n: u32, h: &Polynomial) -> Result<Rational> {
    let ell = require_harmonic(ctx, h)?;
    if ell + 2 * i != n {
        return Err(Error::InhomogeneousInput(format!("harmonic has degree {ell}, expected {}", n as i64 - 2 * i as i64)));
    }
    let lhs = rosler_hermite(ctx, &(&Polynomial::norm_power(ctx.dim(), i) * h))?;
    let rhs = ch_recursion(ctx, i, h)?.polynomial;
    lhs.ratio_to(&rhs).ok_or_else(|| Error::NotProportional { left: lhs.to_string(), right: rhs.to_string() })
}

/// Proportionality constants over the whole Fischer-adapted basis of `P_n`, as `(i, index, c)`.
pub fn proportionality_table(ctx: &DunklContext, n: u32) -> Result<Vec<(u32, usize, Rational)>> {
    let mut out = Vec::new();
    let mut last_i = None;
    let mut idx = 0;
    for (i, h, _) in fischer_basis(ctx, n)? {
        if last_i != Some(i) {
            idx = 0;
            last_i = Some(i);
        }
        out.push((i, idx, proportionality_constant(ctx, i, n, &h)?));
        idx += 1;
    }
    Ok(out)
}

/// `(Δ_k − |x|²)(q e^{−|x|²/2}) + (2n + μ)(q e^{−|x|²/2})`, as a polynomial part.
pub fn weighted_eigen_residual(ctx: &DunklContext, n: u32, q: &Polynomial) -> Result<Polynomial> {
    let f = WeightedFunction::hermite_function(q.clone());
    let lhs = f.laplacian(ctx)?.sub(&f.mul_polynomial(&Polynomial::norm_squared(ctx.dim())));
    let shift = int(2 * n as i64) + ctx.mu();
    Ok(&lhs.polynomial_part + &q.scale(&shift))
}

/// Verdict form of [`weighted_eigen_residual`].
pub fn weighted_eigenfunction_check(ctx: &DunklContext, n: u32, q: &Polynomial) -> Result<bool> {
    Ok(weighted_eigen_residual(ctx, n, q)?.is_zero())
}
