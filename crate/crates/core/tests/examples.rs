//! Worked examples through the public API.

use dunkl::calculus::{DunklContext, GaussianBase, Sl2};
use dunkl::clifford::{d_plus, d_plus_power, dunkl_dirac, monogenic_basis, CliffordPolynomial};
use dunkl::groups::{builtin_root_system, Family};
use dunkl::hermite::{harmonic_basis, laplace_beltrami_eigenvalue, weighted_eigenfunction_check};
use dunkl::poly::rational::{int, rat};
use dunkl::poly::{dim_homogeneous, Polynomial, Rational};

fn ctx(family: Family, m: usize, kappas: &[Rational]) -> DunklContext {
    DunklContext::new(builtin_root_system(family, m, kappas).unwrap()).unwrap()
}

fn x(m: usize, i: usize) -> Polynomial {
    Polynomial::var(m, i)
}

#[test]
fn rank_one_dunkl_operator() {
    let k = rat(2, 3);
    let c = ctx(Family::Z2, 1, std::slice::from_ref(&k));
    let x1 = x(1, 0);
    assert_eq!(c.dunkl(0, &x1.pow(2)).unwrap(), x1.scale(&int(2)));
    assert_eq!(c.dunkl(0, &x1.pow(3)).unwrap(), x1.pow(2).scale(&(int(3) + int(2) * &k)));
    assert!(c.dunkl(0, &Polynomial::one(1)).unwrap().is_zero());
    assert_eq!(c.laplacian(&x1.pow(3)).unwrap(), x1.scale(&(int(2) * (int(3) + int(2) * &k))));
}

#[test]
fn laplacian_of_norm_is_twice_mu() {
    for c in [
        ctx(Family::A, 3, &[rat(1, 3)]),
        ctx(Family::B, 3, &[rat(1, 2), int(2)]),
        ctx(Family::D, 4, &[rat(3, 4)]),
    ] {
        let r2 = Polynomial::norm_squared(c.dim());
        assert_eq!(c.laplacian(&r2).unwrap(), Polynomial::constant(c.dim(), int(2) * c.mu()));
    }
    let classical = ctx(Family::Z2, 2, &[int(0), int(0)]);
    assert_eq!(classical.laplacian(&(&x(2, 0).pow(2) * &x(2, 1))).unwrap(), x(2, 1).scale(&int(2)));
}

#[test]
fn euler_sl2_and_laplace_beltrami() {
    let c = ctx(Family::B, 2, &[rat(1, 2), int(1)]);
    let f = &x(2, 0).pow(2) * &x(2, 1);
    assert_eq!(c.euler(&f), f.scale(&int(3)));
    assert_eq!(c.r2_multiply(&x(2, 0)), x(2, 0).pow(3) + &x(2, 0) * &x(2, 1).pow(2));
    let one = Polynomial::one(2);
    let half_mu = Polynomial::constant(2, c.mu() / int(2));
    assert_eq!(c.sl2(Sl2::H, &one).unwrap(), half_mu);
    let ef = c.sl2(Sl2::E, &c.sl2(Sl2::F, &one).unwrap()).unwrap() - c.sl2(Sl2::F, &c.sl2(Sl2::E, &one).unwrap()).unwrap();
    assert_eq!(ef, half_mu);
    assert!(c.laplace_beltrami(&one).unwrap().is_zero());
    assert!(c.laplace_beltrami(&Polynomial::norm_squared(2)).unwrap().is_zero());
    for ell in 0..=4 {
        let lambda = laplace_beltrami_eigenvalue(c.mu(), ell);
        for h in harmonic_basis(&c, ell).unwrap().elements {
            assert_eq!(c.laplace_beltrami(&h).unwrap(), h.scale(&lambda));
        }
    }
}

#[test]
fn gaussian_conjugation() {
    let c = ctx(Family::Z2, 1, &[rat(5, 2)]);
    let one = Polynomial::one(1);
    let f = x(1, 0).pow(3) + one.clone();
    assert_eq!(c.gaussian_conjugated(&int(0), GaussianBase::Laplacian, &f).unwrap(), c.laplacian(&f).unwrap());
    assert_eq!(c.gaussian_conjugated(&int(0), GaussianBase::Dunkl(0), &f).unwrap(), c.dunkl(0, &f).unwrap());
    let expected = x(1, 0).pow(2).scale(&int(4)) - Polynomial::constant(1, int(2) * c.mu());
    assert_eq!(c.gaussian_conjugated(&int(-1), GaussianBase::Laplacian, &one).unwrap(), expected);
    let lhs = c.gaussian_conjugated(&rat(-1, 2), GaussianBase::Laplacian, &one).unwrap() - c.r2_multiply(&one);
    assert_eq!(lhs, Polynomial::constant(1, -c.mu().clone()));
    assert!(weighted_eigenfunction_check(&c, 1, &x(1, 0).scale(&int(2))).unwrap());
}

#[test]
fn heat_semigroup_examples() {
    let c = ctx(Family::A, 3, &[rat(1, 2)]);
    let r2 = Polynomial::norm_squared(3);
    let expected = r2.clone() - Polynomial::constant(3, c.mu() / int(2));
    assert_eq!(c.heat_semigroup(&r2).unwrap(), expected);
    assert_eq!(c.heat_semigroup(&x(3, 1)).unwrap(), x(3, 1));
    for h in harmonic_basis(&c, 3).unwrap().elements {
        assert_eq!(c.heat_semigroup(&h).unwrap(), h);
    }
}

#[test]
fn clifford_products() {
    let e1 = CliffordPolynomial::generator(2, 0);
    let e2 = CliffordPolynomial::generator(2, 1);
    assert_eq!(&e1 * &e1, CliffordPolynomial::scalar(Polynomial::constant(2, int(-1))));
    assert!((&(&e1 * &e2) + &(&e2 * &e1)).is_zero());
    let xv = CliffordPolynomial::vector_variable(3);
    assert_eq!(&xv * &xv, CliffordPolynomial::scalar(-Polynomial::norm_squared(3)));
    let expected = &CliffordPolynomial::scalar(-x(2, 0)) - &CliffordPolynomial::blade(0b11, x(2, 1));
    assert_eq!(e1.vector_multiply(), expected);
}

#[test]
fn dirac_examples() {
    let classical = ctx(Family::Z2, 3, &[int(0), int(0), int(0)]);
    let xv = CliffordPolynomial::vector_variable(3);
    assert_eq!(dunkl_dirac(&classical, &xv).unwrap(), CliffordPolynomial::scalar(Polynomial::constant(3, int(-3))));

    let k = rat(1, 4);
    let c = ctx(Family::Z2, 1, &[k]);
    let d = dunkl_dirac(&c, &CliffordPolynomial::scalar(x(1, 0))).unwrap();
    assert_eq!(d, CliffordPolynomial::blade(1, Polynomial::constant(1, c.mu().clone())));

    let c2 = ctx(Family::Z2, 2, &[int(0), int(0)]);
    let one = CliffordPolynomial::scalar(Polynomial::one(2));
    assert_eq!(d_plus(&c2, &one).unwrap(), CliffordPolynomial::vector_variable(2).scale(&int(2)));
    let b2 = ctx(Family::B, 2, &[rat(1, 3), int(2)]);
    let expected = Polynomial::norm_squared(2).scale(&int(-4)) + Polynomial::constant(2, int(2) * b2.mu());
    let one_b = CliffordPolynomial::scalar(Polynomial::one(2));
    assert_eq!(d_plus_power(&b2, 2, &one_b).unwrap(), CliffordPolynomial::scalar(expected));
}

#[test]
fn monogenic_examples() {
    let classical = ctx(Family::Z2, 2, &[int(0), int(0)]);
    assert_eq!(monogenic_basis(&classical, 0).unwrap().len(), 4);
    for ell in 1..=3 {
        let basis = monogenic_basis(&classical, ell).unwrap();
        assert_eq!(basis.len(), 4 * (dim_homogeneous(2, ell) - dim_homogeneous(2, ell - 1)));
    }
    // x1 - e1e2 x2
    let candidate = &CliffordPolynomial::scalar(x(2, 0)) - &CliffordPolynomial::blade(0b11, x(2, 1));
    assert!(dunkl_dirac(&classical, &candidate).unwrap().is_zero());
    let b2 = ctx(Family::B, 2, &[rat(1, 2), int(1)]);
    for m in monogenic_basis(&b2, 2).unwrap() {
        assert!(dunkl_dirac(&b2, &m).unwrap().is_zero());
    }
}
