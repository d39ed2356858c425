//! Dense exact linear algebra over the rationals, and materialization of graded
//! operators as matrices in the deg-lex monomial basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{dim_homogeneous, Monomial};
use super::polynomial::Polynomial;
use super::rational::{common_denominator, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length must equal row count");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::MatrixShape {
                rows: other.rows,
                cols: other.cols,
                expected: format!("{} rows", self.cols),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `Some(perm)` when every row holds exactly one `±1` entry and the columns
    /// hit are distinct; `perm[i] = (column, negative)`.
    pub fn signed_permutation(&self) -> Option<Vec<(usize, bool)>> {
        if self.rows != self.cols {
            return None;
        }
        let mut seen = vec![false; self.cols];
        let mut perm = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut hit = None;
            for (j, v) in self.row(i).iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if hit.is_some() || !v.abs().is_one() || seen[j] {
                    return None;
                }
                hit = Some((j, v.is_negative()));
            }
            let (j, neg) = hit?;
            seen[j] = true;
            perm.push((j, neg));
        }
        Some(perm)
    }
}

/// Row echelon data produced by fraction-free elimination.
struct Echelon {
    /// Integer rows in echelon form; only the first `pivots.len()` are nonzero.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Bareiss fraction-free elimination. Each row is first cleared of denominators,
/// after which every intermediate entry is a minor of the integer matrix and the
/// division by the previous pivot is exact.
fn bareiss(m: &Matrix) -> Echelon {
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let d = common_denominator(row);
            row.iter().map(|v| (v * Rational::from_integer(d.clone())).to_integer()).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    bareiss(m).pivots.len()
}

/// Reduced row echelon form over the rationals (rows with pivots only) and the pivot columns.
fn rref(m: &Matrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let Echelon { rows, pivots } = bareiss(m);
    let mut red: Vec<Vec<Rational>> = rows
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    for (r, &c) in pivots.iter().enumerate().rev() {
        let inv = red[r][c].recip();
        for v in red[r].iter_mut() {
            *v *= &inv;
        }
        for above in 0..r {
            let f = red[above][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..m.cols() {
                let delta = &f * &red[r][j];
                red[above][j] -= delta;
            }
        }
    }
    (red, pivots)
}

/// Canonical exact basis of `ker M`.
///
/// One vector per free column of the reduced row echelon form, free columns in
/// increasing (deg-lex) order. Each vector is scaled to integers with content 1
/// and a positive first nonzero entry.
pub fn rational_nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); m.cols()];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -red[r][free].clone();
        }
        out.push(primitive(v));
    }
    out
}

/// Scales a nonzero vector to integer entries with gcd 1 and positive first nonzero entry.
pub fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let d = common_denominator(&v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    let g = g * sign;
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Unique solution of `M y = b`; `None` if the system is inconsistent or underdetermined.
pub fn solve_unique(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows());
    let mut aug = Matrix::zeros(m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols(), b[i].clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() != m.cols() || pivots.last() == Some(&m.cols()) {
        return None;
    }
    Some(red.iter().map(|row| row[m.cols()].clone()).collect())
}

/// A graded linear map `P_k → P_j` written in the deg-lex monomial bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub m: usize,
    pub domain_degree: u32,
    /// `None` when the operator vanishes identically on `P_k`; the matrix then has no rows.
    pub codomain_degree: Option<u32>,
    pub entries: Matrix,
}

impl OperatorMatrix {
    pub fn domain_basis(&self) -> Vec<Monomial> {
        Monomial::of_degree(self.m, self.domain_degree)
    }

    pub fn codomain_basis(&self) -> Vec<Monomial> {
        self.codomain_degree
            .map(|d| Monomial::of_degree(self.m, d))
            .unwrap_or_default()
    }

    /// Applies the matrix to the coefficient vector of a homogeneous `p` of the domain degree.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.dim() != self.m {
            return Err(Error::DimensionMismatch { left: self.m, right: p.dim() });
        }
        if !p.is_zero() && p.homogeneous_degree()? != Some(self.domain_degree) {
            return Err(Error::InhomogeneousInput(format!(
                "{p} is not in P_{}",
                self.domain_degree
            )));
        }
        let v = p.coefficients_in(&self.domain_basis());
        let w = self.entries.mul_vec(&v);
        Ok(Polynomial::from_coefficients(self.m, &self.codomain_basis(), &w))
    }

    pub fn nullspace(&self) -> Vec<Polynomial> {
        let basis = self.domain_basis();
        rational_nullspace(&self.entries)
            .into_iter()
            .map(|v| Polynomial::from_coefficients(self.m, &basis, &v))
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.entries)
    }
}

/// Writes the linear operator `op`, restricted to `P_k` in `m` variables, as a matrix.
///
/// Every image must be homogeneous of one common degree.
pub fn materialize_on_degree<F>(m: usize, k: u32, op: F) -> Result<OperatorMatrix>
where
    F: Fn(&Polynomial) -> Result<Polynomial>,
{
    let basis = Monomial::of_degree(m, k);
    let mut images = Vec::with_capacity(basis.len());
    let mut codomain: Option<u32> = None;
    for mono in &basis {
        let img = op(&Polynomial::term(mono.clone(), Rational::one()))?;
        let bad = || Error::NotHomogeneous {
            degree: k,
            monomial: mono.to_string(),
            image: img.to_string(),
        };
        match (img.homogeneous_degree().map_err(|_| bad())?, codomain) {
            (None, _) => {}
            (Some(d), None) => codomain = Some(d),
            (Some(d), Some(c)) if d == c => {}
            _ => return Err(bad()),
        }
        images.push(img);
    }
    let target = codomain.map(|d| Monomial::of_degree(m, d)).unwrap_or_default();
    let columns: Vec<Vec<Rational>> = images.iter().map(|img| img.coefficients_in(&target)).collect();
    debug_assert_eq!(basis.len(), dim_homogeneous(m, k));
    Ok(OperatorMatrix {
        m,
        domain_degree: k,
        codomain_degree: codomain,
        entries: Matrix::from_columns(target.len(), &columns),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::int;

    fn laplacian(p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(p.dim());
        for i in 0..p.dim() {
            out = out + p.partial(i)?.partial(i)?;
        }
        Ok(out)
    }

    #[test]
    fn identity_on_p2() {
        let op = materialize_on_degree(2, 2, |p| Ok(p.clone())).unwrap();
        assert_eq!(op.entries, Matrix::identity(3));
        assert_eq!(op.codomain_degree, Some(2));
    }

    #[test]
    fn classical_laplacian_on_p2() {
        let op = materialize_on_degree(2, 2, laplacian).unwrap();
        assert_eq!(op.entries, Matrix::from_rows(vec![vec![int(2), int(0), int(2)]]));
        let kernel = op.nullspace();
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        assert_eq!(kernel, vec![&x1 * &x2, &x1.pow(2) - &x2.pow(2)]);
    }

    #[test]
    fn vanishing_operator_has_no_rows() {
        let op = materialize_on_degree(2, 1, laplacian).unwrap();
        assert_eq!(op.codomain_degree, None);
        assert_eq!(op.entries.rows(), 0);
        assert_eq!(op.nullspace().len(), 2);
    }

    #[test]
    fn inhomogeneous_operator_is_rejected() {
        let err = materialize_on_degree(1, 2, |p| Ok(p + &Polynomial::var(1, 0))).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous { .. }));
    }

    #[test]
    fn nullspace_edge_cases() {
        assert_eq!(rational_nullspace(&Matrix::zeros(3, 3)).len(), 3);
        let inv = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]);
        assert!(rational_nullspace(&inv).is_empty());
        assert_eq!(rank(&inv), 2);
    }

    #[test]
    fn nullspace_is_primitive_and_exact() {
        let m = Matrix::from_rows(vec![
            vec![int(2), int(4), int(-6), int(1)],
            vec![int(1), int(2), int(-3), int(5)],
        ]);
        let ns = rational_nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            assert!(v.iter().all(|x| x.is_integer()));
            assert!(v.iter().find(|x| !x.is_zero()).unwrap().is_positive());
        }
    }

    #[test]
    fn solve_unique_system() {
        let m = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(2), int(0)]]);
        let y = solve_unique(&m, &[int(3), int(1), int(4)]).unwrap();
        assert_eq!(y, vec![int(2), int(1)]);
        assert!(solve_unique(&m, &[int(3), int(1), int(5)]).is_none());
    }

    #[test]
    fn permutation_detection() {
        let swap = Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        assert_eq!(swap.signed_permutation(), Some(vec![(1, true), (0, false)]));
        let shear = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        assert_eq!(shear.signed_permutation(), None);
    }
}
