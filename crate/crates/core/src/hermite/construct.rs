//! Clifford–Hermite polynomials `CH_{2t}^μ(H_ℓ) = φ_{2t,ℓ}^μ(|x|²) H_ℓ`, built
//! three ways: by iterating the scalar operator `D₊²`, by the Rodrigues formula
//! (Gaussian-conjugated `−Δ_k`), and from the generalized Laguerre closed form.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::harmonic::require_harmonic;
use crate::calculus::DunklContext;
use crate::error::{Error, Result};
use crate::poly::json::{rational_str, rational_vec};
use crate::poly::linalg::{solve_unique, Matrix};
use crate::poly::rational::{factorial, format_rational, int, pow, rat, rising, Rational};
use crate::poly::{Monomial, Polynomial};

/// One Clifford–Hermite polynomial together with its radial profile
/// `φ_{2t,ℓ}^μ(r) = Σ_i a_{2i} r^i` (coefficients listed `a_0, a_2, ..., a_{2t}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HermiteRecord {
    pub t: u32,
    pub ell: u32,
    #[serde(with = "rational_str")]
    pub mu: Rational,
    #[serde(with = "rational_vec")]
    pub radial_coeffs: Vec<Rational>,
    pub harmonic: Polynomial,
    pub polynomial: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Recursion,
    Rodrigues,
    Laguerre,
}

impl Construction {
    pub const ALL: [Construction; 3] = [Construction::Recursion, Construction::Rodrigues, Construction::Laguerre];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Recursion => "recursion",
            Construction::Rodrigues => "rodrigues",
            Construction::Laguerre => "laguerre",
        }
    }

    pub fn build(self, ctx: &DunklContext, t: u32, h: &Polynomial) -> Result<HermiteRecord> {
        match self {
            Construction::Recursion => ch_recursion(ctx, t, h),
            Construction::Rodrigues => ch_rodrigues(ctx, t, h),
            Construction::Laguerre => ch_laguerre(ctx, t, h),
        }
    }
}

/// `Σ a_i |x|^{2i} H`.
pub fn assemble_radial(coeffs: &[Rational], h: &Polynomial) -> Polynomial {
    let r2 = Polynomial::norm_squared(h.dim());
    let mut radial = Polynomial::zero(h.dim());
    let mut power = Polynomial::one(h.dim());
    for c in coeffs {
        radial = radial + power.scale(c);
        power = &power * &r2;
    }
    &radial * h
}

/// Solves `p = Σ_{i≤t} a_i |x|^{2i} h` exactly for the `a_i`.
pub fn radial_coefficients(p: &Polynomial, h: &Polynomial, t: u32) -> Result<Vec<Rational>> {
    let m = h.dim();
    let columns: Vec<Polynomial> = (0..=t).map(|i| &Polynomial::norm_power(m, i) * h).collect();
    let support: BTreeSet<Monomial> = columns
        .iter()
        .chain(std::iter::once(p))
        .flat_map(|q| q.terms().map(|(k, _)| k.clone()))
        .collect();
    let support: Vec<Monomial> = support.into_iter().collect();
    let cols: Vec<Vec<Rational>> = columns.iter().map(|c| c.coefficients_in(&support)).collect();
    let matrix = Matrix::from_columns(support.len(), &cols);
    solve_unique(&matrix, &p.coefficients_in(&support))
        .ok_or_else(|| Error::NotRadialMultiple { poly: p.to_string() })
}

fn record(ctx: &DunklContext, t: u32, ell: u32, h: &Polynomial, poly: Polynomial) -> Result<HermiteRecord> {
    let radial_coeffs = radial_coefficients(&poly, h, t)?;
    Ok(HermiteRecord {
        t,
        ell,
        mu: ctx.mu().clone(),
        radial_coeffs,
        harmonic: h.clone(),
        polynomial: poly,
    })
}

/// `D₊² = −Δ_k − 4|x|² + 2(2𝔼 + μ)` on scalar polynomials.
pub fn d_plus_squared_scalar(ctx: &DunklContext, q: &Polynomial) -> Result<Polynomial> {
    let lap = ctx.laplacian(q)?;
    let two_e_mu = q.euler().scale(&int(2)) + q.scale(ctx.mu());
    Ok(-lap - ctx.r2_multiply(q).scale(&int(4)) + two_e_mu.scale(&int(2)))
}

/// `CH_{2t} = (D₊²)^t H` via the recursion `CH_{2t} = D₊² CH_{2t−2}`.
pub fn ch_recursion(ctx: &DunklContext, t: u32, h: &Polynomial) -> Result<HermiteRecord> {
    let ell = require_harmonic(ctx, h)?;
    let mut q = h.clone();
    for _ in 0..t {
        q = d_plus_squared_scalar(ctx, &q)?;
    }
    record(ctx, t, ell, h, q)
}

/// Polynomial part of `e^{|x|²}(−Δ_k)^t e^{−|x|²} H`, i.e. `(−Σ(T_i − 2x_i)²)^t H`.
pub fn ch_rodrigues(ctx: &DunklContext, t: u32, h: &Polynomial) -> Result<HermiteRecord> {
    let ell = require_harmonic(ctx, h)?;
    let c = int(-1);
    let mut q = h.clone();
    for _ in 0..t {
        q = -ctx.conjugated_laplacian(&c, &q)?;
    }
    record(ctx, t, ell, h, q)
}

/// The other Rodrigues form, `e^{|x|²/2}(−Δ_k − |x|² + 2𝔼 + μ)^t e^{−|x|²/2} H`.
pub fn ch_oscillator(ctx: &DunklContext, t: u32, h: &Polynomial) -> Result<HermiteRecord> {
    let ell = require_harmonic(ctx, h)?;
    let c = rat(-1, 2);
    let mut q = h.clone();
    for _ in 0..t {
        let lap = ctx.conjugated_laplacian(&c, &q)?;
        let euler = ctx.conjugated_euler(&c, &q);
        q = -lap - ctx.r2_multiply(&q) + euler.scale(&int(2)) + q.scale(ctx.mu());
    }
    record(ctx, t, ell, h, q)
}

/// Coefficients of `L_t^a(x) = Σ_i Γ(t+a+1)/(i!(t−i)!Γ(i+a+1)) (−x)^i`, lowest degree first.
///
/// The Gamma ratio is the rising product `(a+i+1)···(a+t)`. Parameters where the
/// Gamma form itself has poles, `a ∈ {−1, ..., −t}`, are refused.
pub fn laguerre_poly(t: u32, a: &Rational) -> Result<Vec<Rational>> {
    if a.is_integer() && *a <= int(-1) && *a >= int(-(t as i64)) {
        return Err(Error::LaguerrePole { a: format_rational(a), t });
    }
    Ok((0..=t)
        .map(|i| {
            let ratio = rising(&(a + int(i as i64 + 1)), t - i);
            let denom = Rational::from_integer(factorial(i) * factorial(t - i));
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            sign * ratio / denom
        })
        .collect())
}

/// `φ_{2t,ℓ}^μ = 2^{2t} t! L_t^{μ/2+ℓ−1}(|x|²)` times `H`.
pub fn ch_laguerre(ctx: &DunklContext, t: u32, h: &Polynomial) -> Result<HermiteRecord> {
    let ell = require_harmonic(ctx, h)?;
    let a = ctx.mu() / int(2) + int(ell as i64 - 1);
    let scale = pow(&int(4), t) * Rational::from_integer(factorial(t));
    let radial_coeffs: Vec<Rational> = laguerre_poly(t, &a)?.into_iter().map(|c| c * &scale).collect();
    let polynomial = assemble_radial(&radial_coeffs, h);
    Ok(HermiteRecord {
        t,
        ell,
        mu: ctx.mu().clone(),
        radial_coeffs,
        harmonic: h.clone(),
        polynomial,
    })
}

/// Nonzero residuals of the two coefficient relations, indexed by `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecursionVerdict {
    /// Records were not consecutive in `t` with common `ℓ`, `μ`.
    pub incompatible: Option<String>,
    /// `a_{2i}^{2t}` minus the value predicted from the `t−1` record.
    pub step_residuals: Vec<(u32, Rational)>,
    /// `−2(2t−2i) a_{2i} − (2i+2)(2ℓ+μ+2i) a_{2i+2}` within the `t` record.
    pub eigen_residuals: Vec<(u32, Rational)>,
}

impl RecursionVerdict {
    pub fn ok(&self) -> bool {
        self.incompatible.is_none() && self.step_residuals.is_empty() && self.eigen_residuals.is_empty()
    }

    /// `Σ_i residual_i |x|^{2i} H`, the exact defect as a polynomial.
    pub fn residual_polynomial(&self, h: &Polynomial) -> Polynomial {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (i, r) in self.step_residuals.iter().chain(&self.eigen_residuals) {
            let i = *i as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Rational::zero());
            }
            coeffs[i] += r;
        }
        assemble_radial(&coeffs, h)
    }
}

fn coeff(a: &[Rational], i: i64) -> Rational {
    if i < 0 {
        return Rational::zero();
    }
    a.get(i as usize).cloned().unwrap_or_else(Rational::zero)
}

/// Checks `a_{2i}^{2t} = −(2i+2)(2ℓ+μ+2i)a_{2i+2}^{2t−2} + 2(2ℓ+4i+μ)a_{2i}^{2t−2} − 4a_{2i−2}^{2t−2}`
/// between consecutive records and `−2(2t−2i)a_{2i}^{2t} = (2i+2)(2ℓ+μ+2i)a_{2i+2}^{2t}` within `record`.
pub fn coefficient_recursions_check(prev: &HermiteRecord, record: &HermiteRecord) -> RecursionVerdict {
    let mut verdict = RecursionVerdict::default();
    if record.t != prev.t + 1 || record.ell != prev.ell || record.mu != prev.mu {
        verdict.incompatible = Some(format!(
            "expected (t, ℓ, μ) = ({}, {}, {}), got ({}, {}, {})",
            prev.t + 1,
            prev.ell,
            format_rational(&prev.mu),
            record.t,
            record.ell,
            format_rational(&record.mu)
        ));
        return verdict;
    }
    let ell = int(record.ell as i64);
    let mu = &record.mu;
    let t = record.t as i64;
    let (a, b) = (&prev.radial_coeffs, &record.radial_coeffs);
    for i in 0..=t {
        let ii = int(i);
        let predicted = -(int(2 * i + 2) * (int(2) * &ell + mu + int(2) * &ii)) * coeff(a, i + 1)
            + int(2) * (int(2) * &ell + int(4) * &ii + mu) * coeff(a, i)
            - int(4) * coeff(a, i - 1);
        let r = coeff(b, i) - predicted;
        if !r.is_zero() {
            verdict.step_residuals.push((i as u32, r));
        }
        let lhs = int(-2) * int(2 * t - 2 * i) * coeff(b, i);
        let rhs = int(2 * i + 2) * (int(2) * &ell + mu + int(2) * &ii) * coeff(b, i + 1);
        let r = lhs - rhs;
        if !r.is_zero() {
            verdict.eigen_residuals.push((i as u32, r));
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{d_plus_power, CliffordPolynomial};
    use crate::groups::{builtin_root_system, Family};
    use crate::hermite::harmonic::harmonic_basis;

    fn ctx(family: Family, m: usize, kappas: &[Rational]) -> DunklContext {
        DunklContext::new(builtin_root_system(family, m, kappas).unwrap()).unwrap()
    }

    /// Radial profiles listed in the closed-form table, as functions of `ℓ` and `μ`.
    fn table(t: u32, ell: u32, mu: &Rational) -> Vec<Rational> {
        let l2 = int(2 * ell as i64);
        match t {
            0 => vec![int(1)],
            1 => vec![int(2) * (&l2 + mu), int(-4)],
            2 => vec![
                int(4) * (&l2 + mu + int(2)) * (&l2 + mu),
                int(-16) * (&l2 + mu + int(2)),
                int(16),
            ],
            _ => unreachable!(),
        }
    }

    #[test]
    fn recursion_matches_table() {
        let c = ctx(Family::B, 2, &[rat(1, 2), int(2)]);
        for ell in 0..=3 {
            for h in harmonic_basis(&c, ell).unwrap().elements {
                for t in 0..=2 {
                    let rec = ch_recursion(&c, t, &h).unwrap();
                    assert_eq!(rec.radial_coeffs, table(t, ell, c.mu()));
                    assert_eq!(rec.polynomial, assemble_radial(&table(t, ell, c.mu()), &h));
                }
            }
        }
    }

    #[test]
    fn rodrigues_rank_one() {
        let c = ctx(Family::Z2, 1, &[rat(2, 5)]);
        let rec = ch_rodrigues(&c, 1, &Polynomial::one(1)).unwrap();
        let expect = Polynomial::var(1, 0).pow(2).scale(&int(-4)) + Polynomial::constant(1, int(2) * c.mu());
        assert_eq!(rec.polynomial, expect);
        assert_eq!(ch_rodrigues(&c, 0, &Polynomial::var(1, 0)).unwrap().polynomial, Polynomial::var(1, 0));
    }

    #[test]
    fn laguerre_low_orders() {
        let a = rat(3, 7);
        assert_eq!(laguerre_poly(0, &a).unwrap(), vec![int(1)]);
        assert_eq!(laguerre_poly(1, &a).unwrap(), vec![int(1) + &a, int(-1)]);
        // (a+1)(a+2)/2 − (a+2)x + x²/2
        let expect = vec![(&a + int(1)) * (&a + int(2)) / int(2), -(&a + int(2)), rat(1, 2)];
        assert_eq!(laguerre_poly(2, &a).unwrap(), expect);
        assert!(matches!(laguerre_poly(3, &int(-2)), Err(Error::LaguerrePole { .. })));
        assert!(laguerre_poly(1, &int(-2)).is_ok());
    }

    #[test]
    fn four_constructions_agree() {
        let c = ctx(Family::Z2, 2, &[int(1), int(1)]);
        for ell in 0..=2 {
            for h in harmonic_basis(&c, ell).unwrap().elements {
                for t in 0..=3 {
                    let rec = ch_recursion(&c, t, &h).unwrap();
                    assert_eq!(ch_rodrigues(&c, t, &h).unwrap(), rec);
                    assert_eq!(ch_laguerre(&c, t, &h).unwrap(), rec);
                    assert_eq!(ch_oscillator(&c, t, &h).unwrap(), rec);
                    assert_eq!(rec.radial_coeffs[t as usize], pow(&int(-4), t));
                }
            }
        }
    }

    #[test]
    fn clifford_definition_agrees_with_scalar_recursion() {
        let c = ctx(Family::B, 2, &[int(1), rat(1, 3)]);
        for ell in 0..=2 {
            for h in harmonic_basis(&c, ell).unwrap().elements {
                for t in 0..=2 {
                    let direct = d_plus_power(&c, 2 * t, &CliffordPolynomial::scalar(h.clone())).unwrap();
                    assert_eq!(direct.as_scalar(), Some(ch_recursion(&c, t, &h).unwrap().polynomial));
                }
            }
        }
    }

    #[test]
    fn coefficient_recursions() {
        let c = ctx(Family::Z2, 2, &[rat(1, 2), int(0)]);
        let h = Polynomial::var(2, 1);
        let recs: Vec<_> = (0..=4).map(|t| ch_recursion(&c, t, &h).unwrap()).collect();
        for w in recs.windows(2) {
            assert!(coefficient_recursions_check(&w[0], &w[1]).ok());
        }
        let mut broken = recs[2].clone();
        broken.radial_coeffs[1] += int(1);
        let v = coefficient_recursions_check(&recs[1], &broken);
        assert!(!v.ok());
        assert_eq!(v.step_residuals, vec![(1, int(1))]);
        assert!(!v.residual_polynomial(&h).is_zero());
        assert!(coefficient_recursions_check(&recs[0], &recs[2]).incompatible.is_some());
    }

    #[test]
    fn non_harmonic_is_refused() {
        let c = ctx(Family::Z2, 2, &[int(1), int(1)]);
        let p = Polynomial::norm_squared(2);
        for cons in Construction::ALL {
            assert!(matches!(cons.build(&c, 1, &p), Err(Error::NotHarmonic(_))));
        }
    }

    #[test]
    fn record_json_shape() {
        let c = ctx(Family::Z2, 1, &[int(0)]);
        let rec = ch_recursion(&c, 1, &Polynomial::one(1)).unwrap();
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["radial_coeffs"], serde_json::json!(["2/1", "-4/1"]));
        assert_eq!(v["mu"], "1/1");
        assert_eq!(v["t"], 1);
        assert_eq!(v["ell"], 0);
    }
}
