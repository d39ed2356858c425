use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::linalg::Matrix;
use super::monomial::Monomial;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Sparse polynomial in `m` variables with rational coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal iff their
/// term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    m: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(m: usize) -> Self {
        Polynomial { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Rational::one())
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        Self::term(Monomial::one(m), c)
    }

    /// The coordinate function `x_{axis+1}`.
    pub fn var(m: usize, axis: usize) -> Self {
        Self::term(Monomial::var(m, axis), Rational::one())
    }

    pub fn term(mono: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(mono.dim());
        p.add_term(mono, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, E>(m: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (E, Rational)>,
        E: Into<Box<[u32]>>,
    {
        let mut p = Polynomial::zero(m);
        for (e, c) in terms {
            let mono = Monomial::new(e);
            assert_eq!(mono.dim(), m, "exponent vector length must equal m");
            p.add_term(mono, c);
        }
        p
    }

    /// `Σ coeffs[j] · basis[j]`.
    pub fn from_coefficients(m: usize, basis: &[Monomial], coeffs: &[Rational]) -> Self {
        let mut p = Polynomial::zero(m);
        for (mono, c) in basis.iter().zip(coeffs) {
            p.add_term(mono.clone(), c.clone());
        }
        p
    }

    /// Linear form `⟨α, x⟩`.
    pub fn linear_form(alpha: &[Rational]) -> Self {
        let m = alpha.len();
        let mut p = Polynomial::zero(m);
        for (i, a) in alpha.iter().enumerate() {
            p.add_term(Monomial::var(m, i), a.clone());
        }
        p
    }

    /// `|x|^2 = x_1^2 + ... + x_m^2`.
    pub fn norm_squared(m: usize) -> Self {
        let mut p = Polynomial::zero(m);
        for i in 0..m {
            let mut e = vec![0; m];
            e[i] = 2;
            p.add_term(Monomial::new(e), Rational::one());
        }
        p
    }

    /// `|x|^{2s}`.
    pub fn norm_power(m: usize, s: u32) -> Self {
        let r2 = Polynomial::norm_squared(m);
        (0..s).fold(Polynomial::one(m), |acc, _| &acc * &r2)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (deg-lex descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|b| self.coefficient(b)).collect()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogeneous degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        if self.is_homogeneous() {
            Ok(self.degree())
        } else {
            Err(Error::InhomogeneousInput(self.to_string()))
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch { left: self.m, right: other.m });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), -v);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.m);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                out.add_term(ka.mul(kb), va * vb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.m);
        }
        Polynomial {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.m);
        }
        Polynomial {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.mul(mono), v * c)).collect(),
        }
    }

    /// `x_{axis+1} · p`.
    pub fn mul_var(&self, axis: usize) -> Polynomial {
        Polynomial {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.with_exponent(axis, k.exponents()[axis] + 1), v.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative along a zero-based axis.
    pub fn partial(&self, axis: usize) -> Result<Polynomial> {
        if axis >= self.m {
            return Err(Error::AxisOutOfRange { axis, m: self.m });
        }
        let mut out = Polynomial::zero(self.m);
        for (k, v) in &self.terms {
            let e = k.exponents()[axis];
            if e > 0 {
                out.add_term(k.with_exponent(axis, e - 1), v * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Euler operator `Σ x_i ∂_i`: scales each term by its degree.
    pub fn euler(&self) -> Polynomial {
        self.map_by_degree(|d| Rational::from_integer(d.into()))
    }

    /// Multiplies every homogeneous component of degree `d` by `f(d)`.
    pub fn map_by_degree(&self, f: impl Fn(u32) -> Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.m);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * f(k.degree()));
        }
        out
    }

    /// `p(A x)`, expanded.
    pub fn compose_linear(&self, a: &Matrix) -> Result<Polynomial> {
        if a.rows() != self.m || a.cols() != self.m {
            return Err(Error::MatrixShape {
                rows: a.rows(),
                cols: a.cols(),
                expected: format!("{0}x{0}", self.m),
            });
        }
        if let Some(perm) = a.signed_permutation() {
            return Ok(self.compose_signed_permutation(&perm));
        }
        let forms: Vec<Polynomial> = (0..self.m)
            .map(|i| Polynomial::linear_form(a.row(i)))
            .collect();
        // powers[i][e] = (row_i · x)^e, grown on demand
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(self.m)]; self.m];
        let mut out = Polynomial::zero(self.m);
        for (k, v) in &self.terms {
            let mut acc = Polynomial::constant(self.m, v.clone());
            for (i, &e) in k.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &forms[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    acc = &acc * &powers[i][e];
                }
            }
            for (mk, mv) in acc.terms {
                out.add_term(mk, mv);
            }
        }
        Ok(out)
    }

    /// `perm[i] = (j, negative)` means `x_i ↦ ±x_j`.
    fn compose_signed_permutation(&self, perm: &[(usize, bool)]) -> Polynomial {
        let mut out = Polynomial::zero(self.m);
        for (k, v) in &self.terms {
            let mut e = vec![0u32; self.m];
            let mut odd = false;
            for (i, &ei) in k.exponents().iter().enumerate() {
                let (j, neg) = perm[i];
                e[j] += ei;
                odd ^= neg && ei % 2 == 1;
            }
            out.add_term(Monomial::new(e), if odd { -v } else { v.clone() });
        }
        out
    }

    /// Exact quotient by `⟨α, x⟩`; a nonzero remainder is an error.
    pub fn divide_by_linear_form(&self, alpha: &[Rational]) -> Result<Polynomial> {
        if alpha.len() != self.m {
            return Err(Error::DimensionMismatch { left: self.m, right: alpha.len() });
        }
        let Some(lead) = alpha.iter().position(|a| !a.is_zero()) else {
            return Err(Error::ZeroRoot);
        };
        let lead_inv = alpha[lead].recip();
        // Key: exponent of the lead variable first, then deg-lex. Each step removes
        // the largest key and only introduces strictly smaller ones.
        let key = |mono: &Monomial| (mono.exponents()[lead], mono.clone());
        let mut rem: BTreeMap<(u32, Monomial), Rational> =
            self.terms.iter().map(|(k, v)| (key(k), v.clone())).collect();
        let mut quotient = Polynomial::zero(self.m);
        while let Some(((e, mono), c)) = rem.pop_last() {
            if e == 0 {
                rem.insert((e, mono), c);
                let remainder = Polynomial {
                    m: self.m,
                    terms: rem.into_iter().map(|((_, k), v)| (k, v)).collect(),
                };
                return Err(Error::InexactDivision {
                    divisor: Polynomial::linear_form(alpha).to_string(),
                    remainder: remainder.to_string(),
                });
            }
            let q_mono = mono.with_exponent(lead, e - 1);
            let q = &c * &lead_inv;
            for (j, a) in alpha.iter().enumerate() {
                if j == lead || a.is_zero() {
                    continue;
                }
                let t = q_mono.with_exponent(j, q_mono.exponents()[j] + 1);
                let k = key(&t);
                let delta = -(&q * a);
                match rem.get_mut(&k) {
                    Some(v) => {
                        *v += delta;
                        if v.is_zero() {
                            rem.remove(&k);
                        }
                    }
                    None => {
                        rem.insert(k, delta);
                    }
                }
            }
            quotient.add_term(q_mono, q);
        }
        Ok(quotient)
    }

    /// The scalar `c` with `self = c · other`, if one exists. `other` must be nonzero.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Rational> {
        let (mono, lead) = other.terms.iter().next_back()?;
        let c = self.coefficient(mono) / lead;
        (other.scale(&c) == *self).then_some(c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(self.m), |acc, _| &acc * self)
    }

    /// Content-free sign-normalized copy: leading coefficient positive.
    pub fn with_positive_lead(&self) -> Polynomial {
        match self.terms.values().next_back() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, v)) in self.terms().enumerate() {
            let neg = v.is_negative();
            let abs = v.abs();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = k.degree() == 0;
            if abs.is_one() && !is_const {
                write!(f, "{k}")?;
            } else {
                let c = if abs.is_integer() { abs.numer().to_string() } else { format_rational(&abs) };
                if is_const {
                    f.write_str(&c)?;
                } else {
                    write!(f, "{c}*{k}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
