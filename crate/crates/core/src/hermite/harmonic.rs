//! Dunkl-harmonics and the Fischer decomposition `P_k = ⊕ |x|^{2i} H_{k−2i}`.

use num_traits::Zero;
use serde::Serialize;

use crate::calculus::DunklContext;
use crate::error::{Error, Result};
use crate::poly::linalg::{materialize_on_degree, solve_unique, Matrix};
use crate::poly::rational::{format_rational, int, is_nonpositive_even_integer, Rational};
use crate::poly::{dim_homogeneous, Monomial, Polynomial};

/// Canonical basis of `H_ℓ = P_ℓ ∩ ker Δ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicBasis {
    pub degree: u32,
    pub elements: Vec<Polynomial>,
}

impl HarmonicBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `dim P_ℓ − dim P_{ℓ−2}`, the classical spherical-harmonic count.
pub fn classical_harmonic_dimension(m: usize, ell: u32) -> usize {
    let lower = if ell >= 2 { dim_homogeneous(m, ell - 2) } else { 0 };
    dim_homogeneous(m, ell) - lower
}

pub fn harmonic_basis(ctx: &DunklContext, ell: u32) -> Result<HarmonicBasis> {
    let op = materialize_on_degree(ctx.dim(), ell, |p| ctx.laplacian(p))?;
    Ok(HarmonicBasis { degree: ell, elements: op.nullspace() })
}

/// Refuses `μ ∈ {0, −2, −4, ...}`, where the Fischer decomposition can fail.
pub fn require_fischer_mu(ctx: &DunklContext) -> Result<()> {
    if is_nonpositive_even_integer(ctx.mu()) {
        return Err(Error::degenerate_mu(ctx.mu()));
    }
    Ok(())
}

/// One summand `|x|^{2i} H` of a Fischer decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FischerComponent {
    pub i: u32,
    pub harmonic_degree: u32,
    /// The Dunkl-harmonic `H` of degree `k − 2i`.
    pub harmonic: Polynomial,
    /// `|x|^{2i} H`.
    pub component: Polynomial,
}

/// Splits a homogeneous polynomial into its Fischer summands by solving in the
/// basis `{|x|^{2i} h : h ∈ H_{k−2i}}`. Zero summands are omitted.
pub fn fischer_decompose(ctx: &DunklContext, p: &Polynomial) -> Result<Vec<FischerComponent>> {
    require_fischer_mu(ctx)?;
    let m = ctx.dim();
    if p.dim() != m {
        return Err(Error::DimensionMismatch { left: m, right: p.dim() });
    }
    let Some(k) = p.homogeneous_degree()? else {
        return Ok(Vec::new());
    };
    let monos = Monomial::of_degree(m, k);
    let mut columns = Vec::new();
    let mut owners = Vec::new();
    for i in 0..=k / 2 {
        let radial = Polynomial::norm_power(m, i);
        for h in harmonic_basis(ctx, k - 2 * i)?.elements {
            columns.push((&radial * &h).coefficients_in(&monos));
            owners.push((i, h));
        }
    }
    let matrix = Matrix::from_columns(monos.len(), &columns);
    let coeffs = solve_unique(&matrix, &p.coefficients_in(&monos))
        .ok_or_else(|| Error::degenerate_mu(ctx.mu()))?;
    let mut out: Vec<FischerComponent> = Vec::new();
    for ((i, h), c) in owners.into_iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let term = h.scale(&c);
        match out.last_mut() {
            Some(last) if last.i == i => last.harmonic = &last.harmonic + &term,
            _ => out.push(FischerComponent {
                i,
                harmonic_degree: k - 2 * i,
                harmonic: term,
                component: Polynomial::zero(m),
            }),
        }
    }
    out.retain(|c| !c.harmonic.is_zero());
    for c in &mut out {
        c.component = &Polynomial::norm_power(m, c.i) * &c.harmonic;
    }
    Ok(out)
}

/// `P_i^k = Π_{l≠i} (Δ_LB + (k−2l)(μ−2+k−2l)) / (2(i−l)(2k−2i−2l+μ−2))` applied to `p ∈ P_k`.
pub fn fischer_project(ctx: &DunklContext, i: u32, k: u32, p: &Polynomial) -> Result<Polynomial> {
    let m = ctx.dim();
    if p.dim() != m {
        return Err(Error::DimensionMismatch { left: m, right: p.dim() });
    }
    if !p.is_zero() && p.homogeneous_degree()? != Some(k) {
        return Err(Error::InhomogeneousInput(format!("{p} is not in P_{k}")));
    }
    if i > k / 2 {
        return Ok(Polynomial::zero(m));
    }
    let mu = ctx.mu();
    let shift = mu - int(2);
    let mut factors = Vec::new();
    for l in (0..=k / 2).filter(|&l| l != i) {
        let denom = int(2) * int(i as i64 - l as i64) * (int(2 * k as i64 - 2 * i as i64 - 2 * l as i64) + &shift);
        if denom.is_zero() {
            return Err(Error::ProjectionDenominator { i, k, l, mu: format_rational(mu) });
        }
        let d = int(k as i64 - 2 * l as i64);
        let eigen = &d * (&shift + &d);
        factors.push((eigen, denom.recip()));
    }
    let mut out = p.clone();
    for (eigen, inv) in factors {
        if out.is_zero() {
            break;
        }
        let lb = ctx.laplace_beltrami(&out)?;
        out = (lb + out.scale(&eigen)).scale(&inv);
    }
    Ok(out)
}

/// The Fischer-adapted basis of `P_n`: `|x|^{2i} h` for `h` in the canonical basis
/// of `H_{n−2i}`, `i = 0..=n/2`. Entries are `(i, h, |x|^{2i} h)`.
pub fn fischer_basis(ctx: &DunklContext, n: u32) -> Result<Vec<(u32, Polynomial, Polynomial)>> {
    let mut out = Vec::new();
    for i in 0..=n / 2 {
        let radial = Polynomial::norm_power(ctx.dim(), i);
        for h in harmonic_basis(ctx, n - 2 * i)?.elements {
            let full = &radial * &h;
            out.push((i, h, full));
        }
    }
    Ok(out)
}

pub(crate) fn require_harmonic(ctx: &DunklContext, h: &Polynomial) -> Result<u32> {
    let lap = ctx.laplacian(h)?;
    if !lap.is_zero() {
        return Err(Error::NotHarmonic(lap.to_string()));
    }
    match h.homogeneous_degree() {
        Ok(Some(d)) => Ok(d),
        _ => Err(Error::NotHarmonic(format!("{h} is not a nonzero homogeneous polynomial"))),
    }
}

/// Eigenvalue `−ℓ(μ−2+ℓ)` of `Δ_LB` on `|x|^{2i} H_ℓ`.
pub fn laplace_beltrami_eigenvalue(mu: &Rational, ell: u32) -> Rational {
    let l = int(ell as i64);
    -(&l * (mu - int(2) + &l))
}
