//! Exact Gaussian moments against the `ℤ₂^m` weight `Π|x_i|^{2κ_i}`.
//!
//! With integer `κ` every moment is a rational multiple of `π^{m/2}`, so inner
//! products of Hermite functions come out exact.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::calculus::DunklContext;
use crate::error::{Error, Result};
use crate::groups::fmt_vec;
use crate::hermite::{ch_recursion, harmonic_basis};
use crate::poly::rational::{factorial, format_rational};
use crate::poly::{Polynomial, Rational};

/// `coefficient · π^{m/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentValue {
    pub coefficient: Rational,
    pub m: usize,
}

impl MomentValue {
    pub fn zero(m: usize) -> Self {
        MomentValue { coefficient: Rational::zero(), m }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coefficient.is_positive()
    }

    /// `"m/2"`, written like every other rational.
    pub fn pi_power(&self) -> String {
        format_rational(&Rational::new(BigInt::from(self.m), BigInt::from(2)))
    }

    /// Exact ratio, `None` when dividing by zero.
    pub fn ratio(&self, other: &MomentValue) -> Option<Rational> {
        assert_eq!(self.m, other.m);
        (!other.is_zero()).then(|| &self.coefficient / &other.coefficient)
    }
}

impl Add for MomentValue {
    type Output = MomentValue;
    fn add(self, rhs: MomentValue) -> MomentValue {
        assert_eq!(self.m, rhs.m, "moments of different dimension");
        MomentValue { coefficient: self.coefficient + rhs.coefficient, m: self.m }
    }
}

impl Mul<&Rational> for MomentValue {
    type Output = MomentValue;
    fn mul(self, rhs: &Rational) -> MomentValue {
        MomentValue { coefficient: self.coefficient * rhs, m: self.m }
    }
}

impl std::fmt::Display for MomentValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}·π^({})", format_rational(&self.coefficient), self.pi_power())
    }
}

/// `Γ(n + 1/2) / √π = (2n)! / (4^n n!)`.
fn half_gamma(n: u32) -> Rational {
    let num = factorial(2 * n);
    let den = BigInt::from(4u8).pow(n) * factorial(n);
    Rational::new(num, den)
}

/// `Π_i ∫ x^{a_i} |x|^{2κ_i} e^{−x²} dx`.
pub fn weighted_moment(exponents: &[u32], kappa: &[u32]) -> Result<MomentValue> {
    if exponents.len() != kappa.len() {
        return Err(Error::DimensionMismatch { left: exponents.len(), right: kappa.len() });
    }
    let m = exponents.len();
    let mut c = Rational::one();
    for (&a, &k) in exponents.iter().zip(kappa) {
        if a % 2 == 1 {
            return Ok(MomentValue::zero(m));
        }
        c *= half_gamma(a / 2 + k);
    }
    Ok(MomentValue { coefficient: c, m })
}

/// `∫ f g w_κ e^{−|x|²}`, the inner product of the Hermite functions `f e^{−|x|²/2}`, `g e^{−|x|²/2}`.
pub fn inner_product(f: &Polynomial, g: &Polynomial, kappa: &[u32]) -> Result<MomentValue> {
    let fg = f.try_mul(g)?;
    let mut acc = MomentValue::zero(kappa.len());
    for (mono, c) in fg.terms() {
        let v = weighted_moment(mono.exponents(), kappa)?;
        if !v.is_zero() {
            acc = acc + v * c;
        }
    }
    if acc.m != fg.dim() {
        return Err(Error::DimensionMismatch { left: fg.dim(), right: kappa.len() });
    }
    Ok(acc)
}

/// Per-axis integer multiplicities of a root system whose roots are the coordinate axes.
pub fn coordinate_multiplicities(ctx: &DunklContext) -> Result<Vec<u32>> {
    let rs = ctx.root_system();
    let m = rs.dim();
    let mut kappa: Vec<Option<u32>> = vec![None; m];
    for (idx, root) in rs.positive_roots().iter().enumerate() {
        let support: Vec<usize> = (0..m).filter(|&i| !root[i].is_zero()).collect();
        let [axis] = support[..] else {
            return Err(Error::NotCoordinateGroup(format!("root {} is not a coordinate axis", fmt_vec(root))));
        };
        let k = rs.kappa(idx);
        if !k.is_integer() || k.is_negative() {
            return Err(Error::NonIntegerMultiplicity(format_rational(k)));
        }
        let k: u32 = k
            .to_integer()
            .try_into()
            .map_err(|_| Error::NonIntegerMultiplicity(format_rational(k)))?;
        kappa[axis] = Some(k);
    }
    kappa
        .into_iter()
        .enumerate()
        .map(|(i, k)| k.ok_or_else(|| Error::NotCoordinateGroup(format!("axis {} carries no root", i + 1))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HermiteLabel {
    pub t: u32,
    pub ell: u32,
    pub h_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityEntry {
    pub left: HermiteLabel,
    pub right: HermiteLabel,
    #[serde(rename = "value_coeff", serialize_with = "ser_coeff")]
    pub value: MomentValue,
    pub pi_power: String,
}

fn ser_coeff<S: Serializer>(v: &MomentValue, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(&v.coefficient))
}

impl OrthogonalityEntry {
    /// Distinct `(t, ℓ)` must be orthogonal; diagonal entries must be positive.
    /// Distinct harmonics of the same `(t, ℓ)` are recorded, not judged.
    pub fn violates(&self) -> bool {
        let (l, r) = (&self.left, &self.right);
        if l == r {
            !self.value.is_positive()
        } else if (l.t, l.ell) != (r.t, r.ell) {
            !self.value.is_zero()
        } else {
            false
        }
    }
}

/// All pairwise inner products of `CH_{2t}(H)`, `2t + ℓ ≤ max_n`, upper triangle including the diagonal.
pub fn orthogonality_report(ctx: &DunklContext, max_n: u32) -> Result<Vec<OrthogonalityEntry>> {
    let kappa = coordinate_multiplicities(ctx)?;
    let mut family = Vec::new();
    for ell in 0..=max_n {
        let basis = harmonic_basis(ctx, ell)?;
        for t in 0..=(max_n - ell) / 2 {
            for (h_index, h) in basis.elements.iter().enumerate() {
                family.push((HermiteLabel { t, ell, h_index }, ch_recursion(ctx, t, h)?.polynomial));
            }
        }
    }
    family.sort_by_key(|f| f.0);
    let pairs: Vec<(usize, usize)> = (0..family.len()).flat_map(|i| (i..family.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let value = inner_product(&family[i].1, &family[j].1, &kappa)?;
            let pi_power = value.pi_power();
            Ok(OrthogonalityEntry { left: family[i].0, right: family[j].0, value, pi_power })
        })
        .collect()
}
