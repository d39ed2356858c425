//! Dunkl operators and the operators built from them.
//!
//! `T_i f = ∂_i f + Σ_{α∈R₊} κ_α α_i (f − f∘r_α)/⟨α,x⟩`, with the difference
//! quotient computed by exact division, so a geometry that does not make it a
//! polynomial surfaces as [`Error::InexactDivision`] instead of a wrong answer.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::{reflection_matrix, RootSystem};
use crate::poly::rational::{int, rat, Rational};
use crate::poly::{Matrix, Polynomial};

/// A root system together with its cached reflections; every operator in this
/// module is a method on it.
#[derive(Clone, Debug)]
pub struct DunklContext {
    rs: RootSystem,
    reflections: Vec<Matrix>,
    /// Roots with nonzero multiplicity, the only ones contributing difference terms.
    active: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2 {
    /// `E = ½|x|²`
    E,
    /// `F = −½Δ_k`
    F,
    /// `H = 𝔼 + μ/2`
    H,
}

/// Operator to conjugate by a Gaussian `e^{c|x|²}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussianBase {
    Dunkl(usize),
    Laplacian,
}

impl DunklContext {
    pub fn new(rs: RootSystem) -> Result<Self> {
        let reflections = rs
            .positive_roots()
            .iter()
            .map(|a| reflection_matrix(a))
            .collect::<Result<Vec<_>>>()?;
        let active = (0..rs.positive_roots().len())
            .filter(|&i| !rs.kappa(i).is_zero())
            .collect();
        Ok(DunklContext { rs, reflections, active })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn reflections(&self) -> &[Matrix] {
        &self.reflections
    }

    pub fn dim(&self) -> usize {
        self.rs.dim()
    }

    pub fn mu(&self) -> &Rational {
        self.rs.mu()
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: f.dim() });
        }
        Ok(())
    }

    /// `(f − f∘r_α)/⟨α,x⟩` for the `idx`-th positive root.
    pub fn difference_quotient(&self, idx: usize, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let reflected = f.compose_linear(&self.reflections[idx])?;
        (f - &reflected).divide_by_linear_form(&self.rs.positive_roots()[idx])
    }

    /// `T_i f` for a zero-based axis `i`.
    pub fn dunkl(&self, axis: usize, f: &Polynomial) -> Result<Polynomial> {
        let mut out = f.partial(axis)?;
        for &idx in &self.active {
            let alpha = &self.rs.positive_roots()[idx];
            if alpha[axis].is_zero() {
                continue;
            }
            let q = self.difference_quotient(idx, f)?;
            out = out + q.scale(&(self.rs.kappa(idx) * &alpha[axis]));
        }
        Ok(out)
    }

    /// `(T_1 f, ..., T_m f)`, sharing one difference quotient per root.
    pub fn gradient(&self, f: &Polynomial) -> Result<Vec<Polynomial>> {
        self.check(f)?;
        let mut out = (0..self.dim()).map(|i| f.partial(i)).collect::<Result<Vec<_>>>()?;
        for &idx in &self.active {
            let alpha = &self.rs.positive_roots()[idx];
            let q = self.difference_quotient(idx, f)?;
            let k = self.rs.kappa(idx);
            for (i, a) in alpha.iter().enumerate() {
                if !a.is_zero() {
                    out[i] = &out[i] + &q.scale(&(k * a));
                }
            }
        }
        Ok(out)
    }

    /// `Δ_k f = Σ_i T_i(T_i f)`.
    pub fn laplacian(&self, f: &Polynomial) -> Result<Polynomial> {
        let grad = self.gradient(f)?;
        let mut out = Polynomial::zero(self.dim());
        for (i, g) in grad.iter().enumerate() {
            out = out + self.dunkl(i, g)?;
        }
        Ok(out)
    }

    /// `Δ_k^n f`.
    pub fn laplacian_power(&self, n: u32, f: &Polynomial) -> Result<Polynomial> {
        let mut out = f.clone();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = self.laplacian(&out)?;
        }
        Ok(out)
    }

    /// `𝔼f = Σ x_i ∂_i f`.
    pub fn euler(&self, f: &Polynomial) -> Polynomial {
        f.euler()
    }

    /// `|x|² f`.
    pub fn r2_multiply(&self, f: &Polynomial) -> Polynomial {
        &Polynomial::norm_squared(self.dim()) * f
    }

    pub fn sl2(&self, which: Sl2, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        Ok(match which {
            Sl2::E => self.r2_multiply(f).scale(&rat(1, 2)),
            Sl2::F => self.laplacian(f)?.scale(&rat(-1, 2)),
            Sl2::H => f.euler() + f.scale(&(self.mu() / int(2))),
        })
    }

    /// `Δ_LB f = |x|²Δ_k f − 𝔼(μ − 2 + 𝔼) f`.
    pub fn laplace_beltrami(&self, f: &Polynomial) -> Result<Polynomial> {
        let lap = self.laplacian(f)?;
        let shift = self.mu() - int(2);
        let radial = f.map_by_degree(|d| {
            let d = int(d as i64);
            &d * (&shift + &d)
        });
        Ok(self.r2_multiply(&lap) - radial)
    }

    /// `T_i + 2c x_i`: the polynomial part of `T_i(p e^{c|x|²})`. The Gaussian is
    /// invariant under every reflection, so it factors out of the difference terms.
    pub fn conjugated_dunkl(&self, c: &Rational, axis: usize, p: &Polynomial) -> Result<Polynomial> {
        let t = self.dunkl(axis, p)?;
        if c.is_zero() {
            return Ok(t);
        }
        Ok(t + p.mul_var(axis).scale(&(int(2) * c)))
    }

    /// `Σ_i (T_i + 2c x_i)²`.
    pub fn conjugated_laplacian(&self, c: &Rational, p: &Polynomial) -> Result<Polynomial> {
        if c.is_zero() {
            return self.laplacian(p);
        }
        let mut out = Polynomial::zero(self.dim());
        for i in 0..self.dim() {
            let once = self.conjugated_dunkl(c, i, p)?;
            out = out + self.conjugated_dunkl(c, i, &once)?;
        }
        Ok(out)
    }

    /// `𝔼 + 2c|x|²`, the conjugate of the Euler operator.
    pub fn conjugated_euler(&self, c: &Rational, p: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return p.euler();
        }
        p.euler() + self.r2_multiply(p).scale(&(int(2) * c))
    }

    /// Polynomial part of `base(f · e^{c|x|²})`, divided by `e^{c|x|²}`.
    pub fn gaussian_conjugated(&self, c: &Rational, base: GaussianBase, f: &Polynomial) -> Result<Polynomial> {
        match base {
            GaussianBase::Dunkl(i) => self.conjugated_dunkl(c, i, f),
            GaussianBase::Laplacian => self.conjugated_laplacian(c, f),
        }
    }

    /// `e^{sΔ_k} f = Σ_n sⁿ/n! Δ_kⁿ f`, a finite sum since `Δ_k` lowers degree by 2.
    pub fn heat_flow(&self, s: &Rational, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let mut out = f.clone();
        let mut term = f.clone();
        let mut coeff = Rational::one();
        let mut n = 0i64;
        loop {
            term = self.laplacian(&term)?;
            if term.is_zero() {
                break;
            }
            n += 1;
            coeff = coeff * s / int(n);
            out = out + term.scale(&coeff);
        }
        Ok(out)
    }

    /// `e^{−Δ_k/4} f`.
    pub fn heat_semigroup(&self, f: &Polynomial) -> Result<Polynomial> {
        self.heat_flow(&rat(-1, 4), f)
    }

    /// `e^{+Δ_k/4} f`, the inverse of [`heat_semigroup`](Self::heat_semigroup).
    pub fn heat_semigroup_inverse(&self, f: &Polynomial) -> Result<Polynomial> {
        self.heat_flow(&rat(1, 4), f)
    }
}
