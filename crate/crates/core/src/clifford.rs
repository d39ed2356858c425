//! Polynomials with values in the Clifford algebra `Cl_{0,m}` (`e_i² = −1`), the
//! Dunkl Dirac operator `D_k = Σ e_i T_i`, vector multiplication by
//! `x̲ = Σ e_i x_i`, and `D₊ = −D_k + 2x̲`.
//!
//! Basis blades are bitmasks: bit `i` set means `e_{i+1}` is a factor, with
//! factors in increasing index order.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::calculus::DunklContext;
use crate::error::{Error, Result};
use crate::poly::linalg::{rational_nullspace, Matrix};
use crate::poly::rational::{int, Rational};
use crate::poly::{Monomial, Polynomial};

pub type Blade = u32;

/// Product of two basis blades: the resulting blade and its sign.
pub fn blade_product(a: Blade, b: Blade) -> (Blade, bool) {
    // Move each generator of b leftwards past the larger generators of a.
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    // e_i e_i = −1 for every shared generator.
    let squares = (a & b).count_ones();
    (a ^ b, (swaps + squares) % 2 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordPolynomial {
    m: usize,
    blades: BTreeMap<Blade, Polynomial>,
}

impl CliffordPolynomial {
    pub fn zero(m: usize) -> Self {
        assert!(m < 32, "at most 31 generators");
        CliffordPolynomial { m, blades: BTreeMap::new() }
    }

    /// Embeds a scalar polynomial as the coefficient of the unit blade.
    pub fn scalar(p: Polynomial) -> Self {
        Self::blade(0, p)
    }

    pub fn blade(mask: Blade, p: Polynomial) -> Self {
        let mut out = Self::zero(p.dim());
        assert!(mask < (1 << out.m), "blade outside Cl_0,m");
        out.add_blade(mask, p);
        out
    }

    /// The generator `e_{axis+1}` with constant coefficient.
    pub fn generator(m: usize, axis: usize) -> Self {
        Self::blade(1 << axis, Polynomial::one(m))
    }

    /// `x̲ = Σ e_i x_i`.
    pub fn vector_variable(m: usize) -> Self {
        let mut out = Self::zero(m);
        for i in 0..m {
            out.add_blade(1 << i, Polynomial::var(m, i));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.blades.is_empty()
    }

    /// Nonzero components, blades ascending.
    pub fn components(&self) -> impl Iterator<Item = (Blade, &Polynomial)> + '_ {
        self.blades.iter().map(|(k, v)| (*k, v))
    }

    pub fn component(&self, mask: Blade) -> Polynomial {
        self.blades.get(&mask).cloned().unwrap_or_else(|| Polynomial::zero(self.m))
    }

    /// The scalar part, if every other component vanishes.
    pub fn as_scalar(&self) -> Option<Polynomial> {
        self.blades.keys().all(|&k| k == 0).then(|| self.component(0))
    }

    fn add_blade(&mut self, mask: Blade, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let sum = match self.blades.remove(&mask) {
            Some(q) => q + p,
            None => p,
        };
        if !sum.is_zero() {
            self.blades.insert(mask, sum);
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch { left: self.m, right: other.m });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.m);
        for (&a, pa) in &self.blades {
            for (&b, pb) in &other.blades {
                let (mask, neg) = blade_product(a, b);
                let prod = pa * pb;
                out.add_blade(mask, if neg { -prod } else { prod });
            }
        }
        Ok(out)
    }

    /// Applies a scalar operator to every component.
    pub fn map<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let mut out = Self::zero(self.m);
        for (&k, p) in &self.blades {
            out.add_blade(k, f(p)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.m);
        for (&k, p) in &self.blades {
            out.add_blade(k, p.scale(c));
        }
        out
    }

    /// `e_{axis+1} · self`.
    pub fn left_generator(&self, axis: usize) -> Self {
        let mut out = Self::zero(self.m);
        for (&k, p) in &self.blades {
            let (mask, neg) = blade_product(1 << axis, k);
            out.add_blade(mask, if neg { -p } else { p.clone() });
        }
        out
    }

    /// Left multiplication by the scalar polynomial `p`.
    pub fn mul_scalar(&self, p: &Polynomial) -> Self {
        let mut out = Self::zero(self.m);
        for (&k, q) in &self.blades {
            out.add_blade(k, p * q);
        }
        out
    }

    /// `x̲ · self`.
    pub fn vector_multiply(&self) -> Self {
        let mut out = Self::zero(self.m);
        for i in 0..self.m {
            let shifted = self.left_generator(i);
            for (&k, p) in &shifted.blades {
                out.add_blade(k, p.mul_var(i));
            }
        }
        out
    }
}

impl Add<&CliffordPolynomial> for &CliffordPolynomial {
    type Output = CliffordPolynomial;
    fn add(self, rhs: &CliffordPolynomial) -> CliffordPolynomial {
        self.check_dim(rhs).unwrap_or_else(|e| panic!("{e}"));
        let mut out = self.clone();
        for (&k, p) in &rhs.blades {
            out.add_blade(k, p.clone());
        }
        out
    }
}

impl Sub<&CliffordPolynomial> for &CliffordPolynomial {
    type Output = CliffordPolynomial;
    fn sub(self, rhs: &CliffordPolynomial) -> CliffordPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &CliffordPolynomial {
    type Output = CliffordPolynomial;
    fn neg(self) -> CliffordPolynomial {
        self.scale(&int(-1))
    }
}

impl std::ops::Mul<&CliffordPolynomial> for &CliffordPolynomial {
    type Output = CliffordPolynomial;
    fn mul(self, rhs: &CliffordPolynomial) -> CliffordPolynomial {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// `D_k F = Σ_i e_i T_i F`, with `T_i` acting componentwise.
pub fn dunkl_dirac(ctx: &DunklContext, f: &CliffordPolynomial) -> Result<CliffordPolynomial> {
    let m = ctx.dim();
    if f.dim() != m {
        return Err(Error::DimensionMismatch { left: m, right: f.dim() });
    }
    let mut grads: BTreeMap<Blade, Vec<Polynomial>> = BTreeMap::new();
    for (k, p) in f.components() {
        grads.insert(k, ctx.gradient(p)?);
    }
    let mut out = CliffordPolynomial::zero(m);
    for i in 0..m {
        let mut ti = CliffordPolynomial::zero(m);
        for (&k, g) in &grads {
            ti.add_blade(k, g[i].clone());
        }
        out = &out + &ti.left_generator(i);
    }
    Ok(out)
}

/// `D₊F = −D_k F + 2x̲F`.
pub fn d_plus(ctx: &DunklContext, f: &CliffordPolynomial) -> Result<CliffordPolynomial> {
    let d = dunkl_dirac(ctx, f)?;
    Ok(&f.vector_multiply().scale(&int(2)) - &d)
}

/// `D₊ⁿ F`.
pub fn d_plus_power(ctx: &DunklContext, n: u32, f: &CliffordPolynomial) -> Result<CliffordPolynomial> {
    let mut out = f.clone();
    for _ in 0..n {
        out = d_plus(ctx, &out)?;
    }
    Ok(out)
}

/// The coordinate basis of `P_ℓ ⊗ Cl_{0,m}`: blade-major, monomials deg-lex within a blade.
pub fn tensor_basis(m: usize, ell: u32) -> Vec<(Blade, Monomial)> {
    let monos = Monomial::of_degree(m, ell);
    (0..(1u32 << m))
        .flat_map(|b| monos.iter().map(move |mono| (b, mono.clone())))
        .collect()
}

fn coordinates(f: &CliffordPolynomial, basis: &[(Blade, Monomial)]) -> Vec<Rational> {
    basis
        .iter()
        .map(|(b, mono)| f.blades.get(b).map_or_else(Rational::zero, |p| p.coefficient(mono)))
        .collect()
}

/// Exact basis of the Dunkl monogenics `{M ∈ P_ℓ ⊗ Cl : D_k M = 0}`, canonicalized
/// by the reduced-echelon nullspace over [`tensor_basis`].
pub fn monogenic_basis(ctx: &DunklContext, ell: u32) -> Result<Vec<CliffordPolynomial>> {
    let m = ctx.dim();
    let domain = tensor_basis(m, ell);
    let codomain = if ell == 0 { Vec::new() } else { tensor_basis(m, ell - 1) };
    let columns = domain
        .iter()
        .map(|(b, mono)| {
            let f = CliffordPolynomial::blade(*b, Polynomial::term(mono.clone(), Rational::one()));
            Ok(coordinates(&dunkl_dirac(ctx, &f)?, &codomain))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_columns(codomain.len(), &columns);
    Ok(rational_nullspace(&matrix)
        .into_iter()
        .map(|v| {
            let mut out = CliffordPolynomial::zero(m);
            for ((b, mono), c) in domain.iter().zip(v) {
                out.add_blade(*b, Polynomial::term(mono.clone(), c));
            }
            out
        })
        .collect())
}

#[derive(Serialize, Deserialize)]
struct BladeJson {
    mask: Blade,
    poly: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct CliffordJson {
    m: usize,
    blades: Vec<BladeJson>,
}

impl Serialize for CliffordPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CliffordJson {
            m: self.m,
            blades: self
                .blades
                .iter()
                .map(|(&mask, p)| BladeJson { mask, poly: p.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CliffordPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CliffordJson::deserialize(d)?;
        if j.m >= 32 {
            return Err(de::Error::custom("at most 31 generators"));
        }
        let mut out = CliffordPolynomial::zero(j.m);
        for b in j.blades {
            if b.poly.dim() != j.m {
                return Err(de::Error::custom(format!(
                    "blade {} has polynomial in m = {}, expected {}",
                    b.mask,
                    b.poly.dim(),
                    j.m
                )));
            }
            if b.mask >= 1 << j.m {
                return Err(de::Error::custom(format!("blade mask {} outside Cl_0,{}", b.mask, j.m)));
            }
            out.add_blade(b.mask, b.poly);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{builtin_root_system, Family};
    use crate::poly::dim_homogeneous;
    use crate::poly::rational::rat;

    fn ctx_z2(kappas: &[Rational]) -> DunklContext {
        DunklContext::new(builtin_root_system(Family::Z2, kappas.len(), kappas).unwrap()).unwrap()
    }

    #[test]
    fn generator_relations() {
        let m = 3;
        let one = CliffordPolynomial::scalar(Polynomial::one(m));
        for i in 0..m {
            let ei = CliffordPolynomial::generator(m, i);
            assert_eq!(&ei * &ei, -&one);
            for j in 0..m {
                if i != j {
                    let ej = CliffordPolynomial::generator(m, j);
                    assert!((&(&ei * &ej) + &(&ej * &ei)).is_zero());
                }
            }
        }
    }

    #[test]
    fn vector_variable_squares_to_minus_norm() {
        for m in 1..=4 {
            let x = CliffordPolynomial::vector_variable(m);
            assert_eq!(&x * &x, CliffordPolynomial::scalar(-Polynomial::norm_squared(m)));
        }
    }

    #[test]
    fn vector_multiply_of_e1() {
        // x̲ e1 = Σ x_i e_i e1 = −x1 − x2 e1e2
        let m = 2;
        let e1 = CliffordPolynomial::generator(m, 0);
        let got = e1.vector_multiply();
        let mut expect = CliffordPolynomial::scalar(-Polynomial::var(m, 0));
        expect.add_blade(0b11, -Polynomial::var(m, 1));
        assert_eq!(got, expect);
        assert_eq!(got, &CliffordPolynomial::vector_variable(m) * &e1);
    }

    #[test]
    fn dirac_examples() {
        let m = 3;
        let ctx = ctx_z2(&[int(0), int(0), int(0)]);
        let x = CliffordPolynomial::vector_variable(m);
        let got = dunkl_dirac(&ctx, &x).unwrap();
        assert_eq!(got, CliffordPolynomial::scalar(Polynomial::constant(m, int(-3))));

        let k = rat(5, 3);
        let ctx = ctx_z2(std::slice::from_ref(&k));
        let got = dunkl_dirac(&ctx, &CliffordPolynomial::scalar(Polynomial::var(1, 0))).unwrap();
        let expect = CliffordPolynomial::blade(1, Polynomial::constant(1, ctx.mu().clone()));
        assert_eq!(got, expect);
    }

    #[test]
    fn d_plus_on_one() {
        let m = 2;
        let ctx = ctx_z2(&[int(0), int(0)]);
        let one = CliffordPolynomial::scalar(Polynomial::one(m));
        let got = d_plus(&ctx, &one).unwrap();
        assert_eq!(got, CliffordPolynomial::vector_variable(m).scale(&int(2)));

        let ctx = ctx_z2(&[rat(1, 2), int(2)]);
        let got = d_plus_power(&ctx, 2, &one).unwrap();
        let expect = Polynomial::norm_squared(m).scale(&int(-4)) + Polynomial::constant(m, int(2) * ctx.mu());
        assert_eq!(got, CliffordPolynomial::scalar(expect));
    }

    #[test]
    fn monogenics_classical() {
        let m = 2;
        let ctx = ctx_z2(&[int(0), int(0)]);
        assert_eq!(monogenic_basis(&ctx, 0).unwrap().len(), 4);
        let basis = monogenic_basis(&ctx, 1).unwrap();
        for b in &basis {
            assert!(dunkl_dirac(&ctx, b).unwrap().is_zero());
        }
        // x1 − e1e2 x2 lies in the span; check it is killed and count matches.
        let mut target = CliffordPolynomial::scalar(Polynomial::var(m, 0));
        target.add_blade(0b11, -Polynomial::var(m, 1));
        assert!(dunkl_dirac(&ctx, &target).unwrap().is_zero());
        let ell = 1;
        assert_eq!(basis.len(), 4 * (dim_homogeneous(m, ell) - dim_homogeneous(m, ell - 1)));
    }

    #[test]
    fn monogenic_dimension_count() {
        for (m, kappas) in [(2, vec![int(0), int(0)]), (3, vec![int(0); 3]), (2, vec![int(1), rat(1, 2)])] {
            let ctx = ctx_z2(&kappas);
            for ell in 1..=3u32 {
                let n = monogenic_basis(&ctx, ell).unwrap().len();
                let expect = (1 << m) * (dim_homogeneous(m, ell) - dim_homogeneous(m, ell - 1));
                assert_eq!(n, expect, "m = {m}, ell = {ell}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let x = CliffordPolynomial::vector_variable(2);
        let s = serde_json::to_string(&(&x * &CliffordPolynomial::generator(2, 0))).unwrap();
        assert!(s.starts_with(r#"{"m":2,"blades":[{"mask":0,"poly":"#), "{s}");
        let back: CliffordPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, &x * &CliffordPolynomial::generator(2, 0));
        assert!(serde_json::from_str::<CliffordPolynomial>(r#"{"m":1,"blades":[{"mask":2,"poly":{"m":1,"terms":[]}}]}"#).is_err());
    }
}
