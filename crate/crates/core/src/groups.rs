//! Root systems with rational coordinates, their reflections, orbits and
//! multiplicity functions.
//!
//! Roots are not normalized to `⟨α,α⟩ = 2`. The reflection `r_α` and the Dunkl
//! difference term `α_i (f − f∘r_α)/⟨α,x⟩` are both unchanged when `α` is scaled,
//! so any nonzero rational representative of a root line will do. Closure is
//! accordingly checked on root lines.
//!
//! The type `A_{m-1}` is realized inside `R^m` (roots `e_i − e_j`), so its Dunkl
//! dimension is `μ = m + 2γ` with the ambient `m`, not `m − 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::json::{rational_str, rational_vec};
use crate::poly::rational::{format_rational, int, Rational};
use crate::poly::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Z_2^m`, roots `e_i`.
    Z2,
    /// `A_{m-1}` in `R^m`, roots `e_i − e_j`.
    A,
    /// `B_m`, roots `e_i` and `e_i ± e_j`.
    B,
    /// `D_m`, roots `e_i ± e_j`.
    D,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Z2 => "z2",
            Family::A => "a",
            Family::B => "b",
            Family::D => "d",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z2" => Ok(Family::Z2),
            "a" => Ok(Family::A),
            "b" => Ok(Family::B),
            "d" => Ok(Family::D),
            _ => Err(Error::UnsupportedFamily(s.to_string())),
        }
    }
}

pub(crate) fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|r| if r.is_integer() { r.numer().to_string() } else { format_rational(r) })
        .collect();
    format!("({})", parts.join(", "))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn parallel(a: &[Rational], b: &[Rational]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Matrix of `r_α(x) = x − 2⟨α,x⟩/|α|² α`.
pub fn reflection_matrix(alpha: &[Rational]) -> Result<Matrix> {
    let n2 = dot(alpha, alpha);
    if n2.is_zero() {
        return Err(Error::ZeroRoot);
    }
    let m = alpha.len();
    let f = int(2) / n2;
    let mut r = Matrix::identity(m);
    for i in 0..m {
        for j in 0..m {
            let v = r.get(i, j) - &f * &alpha[i] * &alpha[j];
            r.set(i, j, v);
        }
    }
    Ok(r)
}

pub fn reflect(alpha: &[Rational], x: &[Rational]) -> Vec<Rational> {
    let f = int(2) * dot(alpha, x) / dot(alpha, alpha);
    x.iter().zip(alpha).map(|(xi, ai)| xi - &f * ai).collect()
}

/// A validated reduced root system (positive half) with a multiplicity function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    m: usize,
    label: String,
    roots: Vec<Vec<Rational>>,
    kappa: Vec<Rational>,
    orbits: Vec<Vec<usize>>,
    gamma: Rational,
    mu: Rational,
}

impl RootSystem {
    pub fn dim(&self) -> usize {
        self.m
    }

    /// `"B2"`, `"Z2^2"`, `"custom"`, ...
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn positive_roots(&self) -> &[Vec<Rational>] {
        &self.roots
    }

    /// Multiplicity of the `idx`-th positive root.
    pub fn kappa(&self, idx: usize) -> &Rational {
        &self.kappa[idx]
    }

    /// Orbits as index lists into [`positive_roots`](Self::positive_roots),
    /// ordered by their smallest index.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_kappas(&self) -> Vec<Rational> {
        self.orbits.iter().map(|o| self.kappa[o[0]].clone()).collect()
    }

    /// `γ = Σ_{α∈R₊} κ_α`.
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// Dunkl dimension `μ = m + 2γ`.
    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    /// Same roots, new per-orbit multiplicities.
    pub fn with_orbit_kappas(&self, kappas: &[Rational]) -> Result<RootSystem> {
        if kappas.len() != self.orbits.len() {
            return Err(Error::MultiplicityArity {
                family: self.label.clone(),
                m: self.m,
                expected: self.orbits.len(),
                got: kappas.len(),
            });
        }
        let mut kappa = vec![Rational::zero(); self.roots.len()];
        for (orbit, k) in self.orbits.iter().zip(kappas) {
            for &i in orbit {
                kappa[i] = k.clone();
            }
        }
        Ok(RootSystem::assemble(self.m, self.label.clone(), self.roots.clone(), kappa, self.orbits.clone()))
    }

    fn assemble(
        m: usize,
        label: String,
        roots: Vec<Vec<Rational>>,
        kappa: Vec<Rational>,
        orbits: Vec<Vec<usize>>,
    ) -> RootSystem {
        let gamma = kappa.iter().fold(Rational::zero(), |acc, k| acc + k);
        let mu = int(m as i64) + int(2) * &gamma;
        RootSystem { m, label, roots, kappa, orbits, gamma, mu }
    }

    /// Index of the positive root on the line through `v`.
    fn line_index(roots: &[Vec<Rational>], v: &[Rational]) -> Option<usize> {
        roots.iter().position(|r| parallel(r, v))
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m = {}, κ = [", self.label, self.m)?;
        let ks: Vec<String> = self.orbit_kappas().iter().map(format_rational).collect();
        write!(f, "{}])", ks.join(", "))
    }
}

/// Checks nonzero, reduced and closed; returns the orbit partition.
fn validate_roots(m: usize, roots: &[Vec<Rational>]) -> Result<Vec<Vec<usize>>> {
    for r in roots {
        if r.len() != m {
            return Err(Error::DimensionMismatch { left: m, right: r.len() });
        }
        if r.iter().all(Zero::is_zero) {
            return Err(Error::ZeroRoot);
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if parallel(&roots[i], &roots[j]) {
                return Err(Error::NotReduced(fmt_vec(&roots[i]), fmt_vec(&roots[j])));
            }
        }
    }
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in roots {
        for (bi, b) in roots.iter().enumerate() {
            let img = reflect(a, b);
            let Some(ci) = RootSystem::line_index(roots, &img) else {
                return Err(Error::NotClosed {
                    mirror: fmt_vec(a),
                    root: fmt_vec(b),
                    image: fmt_vec(&img),
                });
            };
            let (x, y) = (find(&mut parent, bi), find(&mut parent, ci));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(i);
    }
    Ok(orbits)
}

/// Orbits of the positive roots under the group generated by the root reflections.
pub fn orbit_decomposition(rs: &RootSystem) -> Vec<Vec<Vec<Rational>>> {
    rs.orbits
        .iter()
        .map(|o| o.iter().map(|&i| rs.roots[i].clone()).collect())
        .collect()
}

fn unit(m: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    v[i] = Rational::one();
    v
}

fn combo(m: usize, i: usize, j: usize, sign: i64) -> Vec<Rational> {
    let mut v = unit(m, i);
    v[j] = int(sign);
    v
}

/// One of the built-in families, with one multiplicity per root orbit.
///
/// Orbits are ordered by their first root: for `B_m` that is short roots `e_i`
/// first, then long roots `e_i ± e_j`; for `Z_2^m` it is one entry per coordinate.
pub fn builtin_root_system(family: Family, m: usize, kappas: &[Rational]) -> Result<RootSystem> {
    let min_m = match family {
        Family::Z2 | Family::B => 1,
        Family::A | Family::D => 2,
    };
    if m < min_m {
        return Err(Error::InvalidDimension { family: family.name().to_string(), m });
    }
    let mut roots = Vec::new();
    match family {
        Family::Z2 => roots.extend((0..m).map(|i| unit(m, i))),
        Family::A => {
            for i in 0..m {
                for j in i + 1..m {
                    roots.push(combo(m, i, j, -1));
                }
            }
        }
        Family::B | Family::D => {
            if family == Family::B {
                roots.extend((0..m).map(|i| unit(m, i)));
            }
            for i in 0..m {
                for j in i + 1..m {
                    roots.push(combo(m, i, j, -1));
                    roots.push(combo(m, i, j, 1));
                }
            }
        }
    }
    let orbits = validate_roots(m, &roots)?;
    let label = match family {
        Family::Z2 => format!("Z2^{m}"),
        Family::A => format!("A{}", m - 1),
        Family::B => format!("B{m}"),
        Family::D => format!("D{m}"),
    };
    if kappas.len() != orbits.len() {
        return Err(Error::MultiplicityArity {
            family: label,
            m,
            expected: orbits.len(),
            got: kappas.len(),
        });
    }
    let placeholder = RootSystem::assemble(m, label, roots, Vec::new(), orbits);
    placeholder.with_orbit_kappas(kappas)
}

/// A user-supplied root system. Each `(orbit_rep, κ)` assigns `κ` to the orbit of
/// the positive root on the line through `orbit_rep`; every orbit needs one.
pub fn custom_root_system(
    positive_roots: Vec<Vec<Rational>>,
    multiplicities: &[(Vec<Rational>, Rational)],
) -> Result<RootSystem> {
    let m = positive_roots.first().map_or_else(
        || multiplicities.first().map_or(0, |(r, _)| r.len()),
        Vec::len,
    );
    custom_root_system_in(m, positive_roots, multiplicities)
}

pub fn custom_root_system_in(
    m: usize,
    positive_roots: Vec<Vec<Rational>>,
    multiplicities: &[(Vec<Rational>, Rational)],
) -> Result<RootSystem> {
    let orbits = validate_roots(m, &positive_roots)?;
    let mut orbit_of = vec![0; positive_roots.len()];
    for (o, members) in orbits.iter().enumerate() {
        for &i in members {
            orbit_of[i] = o;
        }
    }
    let mut assigned: Vec<Option<(usize, Rational)>> = vec![None; orbits.len()];
    for (rep, k) in multiplicities {
        if rep.len() != m {
            return Err(Error::DimensionMismatch { left: m, right: rep.len() });
        }
        let idx = RootSystem::line_index(&positive_roots, rep)
            .ok_or_else(|| Error::UnknownOrbitRep(fmt_vec(rep)))?;
        let o = orbit_of[idx];
        match &assigned[o] {
            Some((prev, pk)) if pk != k => {
                return Err(Error::NotOrbitConstant {
                    first: fmt_vec(&positive_roots[*prev]),
                    first_kappa: format_rational(pk),
                    second: fmt_vec(&positive_roots[idx]),
                    second_kappa: format_rational(k),
                });
            }
            Some(_) => {}
            None => assigned[o] = Some((idx, k.clone())),
        }
    }
    let kappas = assigned
        .into_iter()
        .zip(&orbits)
        .map(|(a, members)| {
            a.map(|(_, k)| k)
                .ok_or_else(|| Error::MissingMultiplicity(fmt_vec(&positive_roots[members[0]])))
        })
        .collect::<Result<Vec<_>>>()?;
    let placeholder = RootSystem::assemble(m, "custom".to_string(), positive_roots, Vec::new(), orbits);
    placeholder.with_orbit_kappas(&kappas)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiplicityJson {
    #[serde(with = "rational_vec")]
    pub orbit_rep: Vec<Rational>,
    #[serde(with = "rational_str")]
    pub kappa: Rational,
}

/// `{"m":2, "positive_roots":[["1","0"],["0","1"]], "multiplicities":[{"orbit_rep":["1","0"],"kappa":"1/2"}, ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub m: usize,
    pub positive_roots: Vec<RootJson>,
    pub multiplicities: Vec<MultiplicityJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootJson(#[serde(with = "rational_vec")] pub Vec<Rational>);

impl RootSystemJson {
    pub fn build(self) -> Result<RootSystem> {
        let roots = self.positive_roots.into_iter().map(|r| r.0).collect();
        let mults: Vec<_> = self
            .multiplicities
            .into_iter()
            .map(|mj| (mj.orbit_rep, mj.kappa))
            .collect();
        custom_root_system_in(self.m, roots, &mults)
    }
}

impl From<&RootSystem> for RootSystemJson {
    fn from(rs: &RootSystem) -> Self {
        RootSystemJson {
            m: rs.m,
            positive_roots: rs.roots.iter().cloned().map(RootJson).collect(),
            multiplicities: rs
                .orbits
                .iter()
                .map(|o| MultiplicityJson {
                    orbit_rep: rs.roots[o[0]].clone(),
                    kappa: rs.kappa[o[0]].clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn z2_one_half() {
        let rs = builtin_root_system(Family::Z2, 1, &[rat(1, 2)]).unwrap();
        assert_eq!(rs.positive_roots(), &[v(&[1])]);
        assert_eq!(rs.gamma(), &rat(1, 2));
        assert_eq!(rs.mu(), &int(2));
    }

    #[test]
    fn a2_in_r3() {
        let rs = builtin_root_system(Family::A, 3, &[int(1)]).unwrap();
        assert_eq!(rs.positive_roots().len(), 3);
        assert_eq!(rs.gamma(), &int(3));
        assert_eq!(rs.mu(), &int(9));
        assert_eq!(rs.orbits().len(), 1);
    }

    #[test]
    fn b2_two_orbits() {
        let rs = builtin_root_system(Family::B, 2, &[int(1), int(2)]).unwrap();
        assert_eq!(rs.gamma(), &int(6));
        assert_eq!(rs.mu(), &int(14));
        let orbits = orbit_decomposition(&rs);
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0], vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(orbits[1], vec![v(&[1, -1]), v(&[1, 1])]);
    }

    #[test]
    fn z2_squared_has_singleton_orbits() {
        let rs = builtin_root_system(Family::Z2, 2, &[int(1), int(3)]).unwrap();
        assert_eq!(orbit_decomposition(&rs), vec![vec![v(&[1, 0])], vec![v(&[0, 1])]]);
    }

    #[test]
    fn d_family_orbit_counts() {
        assert_eq!(builtin_root_system(Family::D, 2, &[int(1), int(1)]).unwrap().orbits().len(), 2);
        assert_eq!(builtin_root_system(Family::D, 3, &[int(1)]).unwrap().orbits().len(), 1);
        assert_eq!(builtin_root_system(Family::D, 4, &[int(1)]).unwrap().positive_roots().len(), 12);
    }

    #[test]
    fn arity_is_enforced() {
        let err = builtin_root_system(Family::B, 2, &[int(1)]).unwrap_err();
        assert!(matches!(err, Error::MultiplicityArity { expected: 2, got: 1, .. }));
        assert!(matches!("e8".parse::<Family>(), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn custom_validation() {
        let ok = custom_root_system(vec![v(&[1, 0]), v(&[0, 1])], &[(v(&[1, 0]), int(1)), (v(&[0, 1]), int(1))]);
        assert_eq!(ok.unwrap().mu(), &int(6));

        let err = custom_root_system(vec![v(&[1, 0]), v(&[2, 0])], &[]).unwrap_err();
        assert!(matches!(err, Error::NotReduced(..)), "{err}");
        assert!(err.to_string().contains("not reduced"));

        let err = custom_root_system(vec![v(&[1, 0]), v(&[1, 1])], &[]).unwrap_err();
        assert!(matches!(err, Error::NotClosed { .. }), "{err}");

        // e1 and e2 are in the same B2 orbit
        let b2 = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[1, -1])];
        let err = custom_root_system(
            b2.clone(),
            &[(v(&[1, 0]), int(1)), (v(&[0, 1]), int(2)), (v(&[1, 1]), int(1))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotOrbitConstant { .. }), "{err}");

        let err = custom_root_system(b2, &[(v(&[1, 0]), int(1))]).unwrap_err();
        assert!(matches!(err, Error::MissingMultiplicity(_)), "{err}");
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(
            reflection_matrix(&v(&[1, 0])).unwrap(),
            Matrix::from_rows(vec![v(&[-1, 0]), v(&[0, 1])])
        );
        assert_eq!(
            reflection_matrix(&v(&[1, -1])).unwrap(),
            Matrix::from_rows(vec![v(&[0, 1]), v(&[1, 0])])
        );
        assert!(matches!(reflection_matrix(&v(&[0, 0])), Err(Error::ZeroRoot)));
    }

    #[test]
    fn classical_mu_is_dimension() {
        for m in 1..=4 {
            let rs = builtin_root_system(Family::Z2, m, &vec![int(0); m]).unwrap();
            assert_eq!(rs.mu(), &int(m as i64));
        }
    }

    #[test]
    fn json_round_trip() {
        let rs = builtin_root_system(Family::B, 2, &[rat(1, 2), int(3)]).unwrap();
        let j = serde_json::to_string(&RootSystemJson::from(&rs)).unwrap();
        let back: RootSystemJson = serde_json::from_str(&j).unwrap();
        let rebuilt = back.build().unwrap();
        assert_eq!(rebuilt.mu(), rs.mu());
        assert_eq!(rebuilt.positive_roots(), rs.positive_roots());

        let doc = r#"{"m":2,"positive_roots":[["1","0"],["0","1"]],
                     "multiplicities":[{"orbit_rep":["1","0"],"kappa":"1/2"},{"orbit_rep":["0","2"],"kappa":"1/2"}]}"#;
        let rs: RootSystemJson = serde_json::from_str(doc).unwrap();
        assert_eq!(rs.build().unwrap().mu(), &int(4));
    }
}
