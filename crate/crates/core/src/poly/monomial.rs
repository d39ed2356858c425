use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `x_1^{e_1} ... x_m^{e_m}`.
///
/// Ordered degree-lexicographically: higher total degree is greater, and within a
/// degree a larger exponent of an earlier variable is greater, so `x1^2 > x1 x2 > x2^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exponents: impl Into<Box<[u32]>>) -> Self {
        Monomial(exponents.into())
    }

    pub fn one(m: usize) -> Self {
        Monomial(vec![0; m].into())
    }

    pub fn var(m: usize, axis: usize) -> Self {
        let mut e = vec![0; m];
        e[axis] = 1;
        Monomial(e.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn with_exponent(&self, axis: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[axis] = e;
        Monomial(v)
    }

    /// All monomials of total degree `k` in `m` variables, greatest first.
    pub fn of_degree(m: usize, k: u32) -> Vec<Monomial> {
        fn fill(prefix: &mut Vec<u32>, left: usize, k: u32, out: &mut Vec<Monomial>) {
            if left == 1 {
                prefix.push(k);
                out.push(Monomial(prefix.clone().into()));
                prefix.pop();
                return;
            }
            for e in (0..=k).rev() {
                prefix.push(e);
                fill(prefix, left - 1, k - e, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if m == 0 {
            if k == 0 {
                out.push(Monomial(Box::new([])));
            }
            return out;
        }
        fill(&mut Vec::with_capacity(m), m, k, &mut out);
        out
    }

    /// All monomials of total degree at most `k`, greatest first.
    pub fn up_to_degree(m: usize, k: u32) -> Vec<Monomial> {
        (0..=k).rev().flat_map(|d| Monomial::of_degree(m, d)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// `dim P_k = C(k + m - 1, m - 1)`.
pub fn dim_homogeneous(m: usize, k: u32) -> usize {
    if m == 0 {
        return usize::from(k == 0);
    }
    let k = k as usize;
    // C(k+m-1, m-1) computed incrementally; stays integral at every step.
    (1..m).fold(1usize, |acc, j| acc * (k + j) / j)
}
