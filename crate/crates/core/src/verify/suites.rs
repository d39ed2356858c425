use num_traits::One;

use super::{classical_contexts, coordinate_contexts, run_units, sample_contexts, Failure, Sink, Suite, VerifyConfig};
use crate::calculus::{DunklContext, Sl2};
use crate::clifford::{d_plus, d_plus_power, dunkl_dirac, monogenic_basis, CliffordPolynomial};
use crate::error::Result;
use crate::hermite::construct::{assemble_radial, ch_oscillator, d_plus_squared_scalar};
use crate::hermite::harmonic::classical_harmonic_dimension;
use crate::hermite::rosler::{proportionality_table, weighted_eigen_residual};
use crate::hermite::{
    coefficient_recursions_check, eigen_residual, eigenspace_checks, fischer_decompose, fischer_project,
    harmonic_basis, laplace_beltrami_eigenvalue, rosler_hermite, Construction, HermiteRecord,
};
use crate::moments::orthogonality_report;
use crate::poly::rational::{format_rational, int, pow};
use crate::poly::{Monomial, Polynomial, Rational};

pub(super) fn run(suite: Suite, config: &VerifyConfig) -> (usize, Vec<Failure>) {
    let s = &config.sizes;
    let sample = || sample_contexts(config.seed, s.kappa_draws);
    let degrees = |d: u32| (0..=d).collect::<Vec<u32>>();
    match suite {
        Suite::Commute => run_units(suite, &sample(), &degrees(s.max_deg), commute),
        Suite::Sl2 => run_units(suite, &sample(), &degrees(s.max_deg), sl2),
        Suite::Lemma1 => run_units(suite, &sample(), &degrees(s.radial_ell), |sink, ctx, &ell| {
            radial_laplacian(sink, ctx, ell, s.radial_s)
        }),
        Suite::Anticommutator => run_units(suite, &sample(), &degrees(s.clifford_deg), anticommutator),
        Suite::Dplus2 => run_units(suite, &sample(), &degrees(s.clifford_deg), dplus2),
        Suite::Dirac2 => run_units(suite, &sample(), &degrees(s.clifford_deg), dirac2),
        Suite::Fischer => run_units(suite, &sample(), &degrees(s.fischer_deg), fischer),
        Suite::HermiteEq => run_units(suite, &sample(), &degrees(s.ell_max), |sink, ctx, &ell| {
            hermite_eq(sink, ctx, ell, s.t_max, config.inject_fault)
        }),
        Suite::Diffeq => {
            let units: Vec<DiffeqUnit> = (0..=s.ell_max)
                .map(DiffeqUnit::Clifford)
                .chain((0..=s.rosler_deg).map(DiffeqUnit::Rosler))
                .collect();
            run_units(suite, &sample(), &units, |sink, ctx, unit| diffeq(sink, ctx, unit, s.t_max))
        }
        Suite::Roesler => {
            let units: Vec<RoeslerUnit> = (0..=s.proportionality_deg)
                .map(RoeslerUnit::Span)
                .chain((0..=s.heat_deg).map(RoeslerUnit::Heat))
                .collect();
            run_units(suite, &sample(), &units, roesler)
        }
        Suite::Orthogonality => {
            let ctxs = coordinate_contexts(2, s.orthogonality_kappa);
            run_units(suite, &ctxs, &[s.orthogonality_deg], orthogonality)
        }
        Suite::Classical => {
            let units: Vec<ClassicalUnit> = (0..=s.ell_max)
                .map(ClassicalUnit::Harmonic)
                .chain((0..=s.monogenic_ell).map(ClassicalUnit::Monogenic))
                .collect();
            run_units(suite, &classical_contexts(&[2, 3]), &units, |sink, ctx, unit| {
                classical(sink, ctx, unit, s.t_max.min(2))
            })
        }
    }
}

fn monomials(ctx: &DunklContext, d: u32) -> Vec<(Monomial, Polynomial)> {
    Monomial::of_degree(ctx.dim(), d)
        .into_iter()
        .map(|mono| (mono.clone(), Polynomial::term(mono, Rational::one())))
        .collect()
}

fn blades(ctx: &DunklContext, d: u32) -> Vec<(String, CliffordPolynomial)> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << ctx.dim()) {
        for (mono, p) in monomials(ctx, d) {
            out.push((format!("e[{mask:b}]*{mono}"), CliffordPolynomial::blade(mask, p)));
        }
    }
    out
}

fn commute(sink: &mut Sink, ctx: &DunklContext, &d: &u32) {
    let m = ctx.dim();
    for (mono, f) in monomials(ctx, d) {
        for i in 0..m {
            for j in i + 1..m {
                let r = (|| Ok(ctx.dunkl(i, &ctx.dunkl(j, &f)?)? - ctx.dunkl(j, &ctx.dunkl(i, &f)?)?))();
                sink.zero(&format!("T{}T{} - T{}T{} on {mono}", i + 1, j + 1, j + 1, i + 1), &[d], r);
            }
        }
    }
}

fn sl2(sink: &mut Sink, ctx: &DunklContext, &d: &u32) {
    let op = |w: Sl2, f: &Polynomial| ctx.sl2(w, f);
    let bracket = |a: Sl2, b: Sl2, f: &Polynomial| -> Result<Polynomial> { Ok(op(a, &op(b, f)?)? - op(b, &op(a, f)?)?) };
    for (mono, f) in monomials(ctx, d) {
        let r = (|| Ok(bracket(Sl2::H, Sl2::E, &f)? - op(Sl2::E, &f)?.scale(&int(2))))();
        sink.zero(&format!("[H,E] - 2E on {mono}"), &[d], r);
        let r = (|| Ok(bracket(Sl2::H, Sl2::F, &f)? + op(Sl2::F, &f)?.scale(&int(2))))();
        sink.zero(&format!("[H,F] + 2F on {mono}"), &[d], r);
        let r = (|| Ok(bracket(Sl2::E, Sl2::F, &f)? - op(Sl2::H, &f)?))();
        sink.zero(&format!("[E,F] - H on {mono}"), &[d], r);
        let r = (|| Ok(ctx.laplace_beltrami(&ctx.r2_multiply(&f))? - ctx.r2_multiply(&ctx.laplace_beltrami(&f)?)))();
        sink.zero(&format!("[LB, |x|^2] on {mono}"), &[d], r);
    }
}

fn radial_laplacian(sink: &mut Sink, ctx: &DunklContext, ell: u32, s_max: u32) {
    let Some(basis) = sink.fail_on_error("harmonic basis", &[ell], harmonic_basis(ctx, ell)) else {
        return;
    };
    let m = ctx.dim();
    let l = int(ell as i64);
    for (idx, r) in basis.elements.iter().enumerate() {
        for s in 1..=s_max {
            let res = (|| {
                let lhs = ctx.laplacian(&(&Polynomial::norm_power(m, s) * r))?;
                let si = int(s as i64);
                let c = int(2) * &si * (int(2) * &l + ctx.mu() + int(2) * &si - int(2));
                let rhs = (&Polynomial::norm_power(m, s - 1) * r).scale(&c)
                    + &Polynomial::norm_power(m, s) * &ctx.laplacian(r)?;
                Ok(lhs - rhs)
            })();
            sink.zero(&format!("L(|x|^{{2s}} H) with s={s} on harmonic {idx}"), &[ell, s], res);
        }
    }
}

/// `(2𝔼 + μ) F`, componentwise.
fn shifted_euler(ctx: &DunklContext, f: &CliffordPolynomial) -> Result<CliffordPolynomial> {
    let two_mu = ctx.mu().clone();
    f.map(|p| Ok(p.euler().scale(&int(2)) + p.scale(&two_mu)))
}

fn anticommutator(sink: &mut Sink, ctx: &DunklContext, &d: &u32) {
    for (label, f) in blades(ctx, d) {
        let r = (|| {
            let lhs = &dunkl_dirac(ctx, &f.vector_multiply())? + &dunkl_dirac(ctx, &f)?.vector_multiply();
            Ok(&lhs + &shifted_euler(ctx, &f)?)
        })();
        sink.zero_clifford(&format!("{{D, x}} + (2E + mu) on {label}"), &[d], r);
    }
}

fn dplus2(sink: &mut Sink, ctx: &DunklContext, &d: &u32) {
    for (label, f) in blades(ctx, d) {
        let r = (|| Ok(&d_plus(ctx, &d_plus(ctx, &f)?)? - &f.map(|p| d_plus_squared_scalar(ctx, p))?))();
        sink.zero_clifford(&format!("D+^2 - scalar form on {label}"), &[d], r);
    }
    for (mono, f) in monomials(ctx, d) {
        let r = (|| Ok(-ctx.conjugated_laplacian(&int(-1), &f)? - d_plus_squared_scalar(ctx, &f)?))();
        sink.zero(&format!("-exp(|x|^2) L exp(-|x|^2) - D+^2 on {mono}"), &[d], r);
    }
}

fn dirac2(sink: &mut Sink, ctx: &DunklContext, &d: &u32) {
    for (label, f) in blades(ctx, d) {
        let r = (|| Ok(&dunkl_dirac(ctx, &dunkl_dirac(ctx, &f)?)? + &f.map(|p| ctx.laplacian(p))?))();
        sink.zero_clifford(&format!("D^2 + L on {label}"), &[d], r);
    }
}

fn fischer(sink: &mut Sink, ctx: &DunklContext, &k: &u32) {
    sink.equal(
        "dim H_k equals the classical count",
        &[k],
        classical_harmonic_dimension(ctx.dim(), k),
        harmonic_basis(ctx, k).map(|b| b.len()),
    );
    let top = k / 2;
    for (mono, p) in monomials(ctx, k) {
        let Some(proj) = sink.fail_on_error(
            &format!("projections of {mono}"),
            &[k],
            (0..=top).map(|i| fischer_project(ctx, i, k, &p)).collect::<Result<Vec<_>>>(),
        ) else {
            continue;
        };
        let sum = proj.iter().fold(Polynomial::zero(ctx.dim()), |acc, q| acc + q.clone());
        sink.zero(&format!("sum of projections - id on {mono}"), &[k], Ok(sum - p.clone()));
        for i in 0..=top {
            for j in 0..=top {
                let r = (|| {
                    let pp = fischer_project(ctx, i, k, &proj[j as usize])?;
                    Ok(if i == j { pp - proj[j as usize].clone() } else { pp })
                })();
                sink.zero(&format!("P{i} P{j} - delta P{j} on {mono}"), &[k, i, j], r);
            }
        }
        match fischer_decompose(ctx, &p) {
            Ok(components) => {
                let total = components
                    .iter()
                    .fold(Polynomial::zero(ctx.dim()), |acc, c| acc + c.component.clone());
                sink.zero(&format!("components reassemble {mono}"), &[k], Ok(total - p.clone()));
                for i in 0..=top {
                    let comp = components
                        .iter()
                        .find(|c| c.i == i)
                        .map_or_else(|| Polynomial::zero(ctx.dim()), |c| c.component.clone());
                    sink.zero(&format!("component {i} - P{i} on {mono}"), &[k, i], Ok(comp - proj[i as usize].clone()));
                }
            }
            Err(e) => sink.zero(&format!("decompose {mono}"), &[k], Err(e)),
        }
    }
}

/// The explicit low-order forms `t = 0, 1, 2`.
pub(crate) fn table_coefficients(t: u32, ell: u32, mu: &Rational) -> Option<Vec<Rational>> {
    let b = int(2 * ell as i64) + mu;
    match t {
        0 => Some(vec![int(1)]),
        1 => Some(vec![int(2) * &b, int(-4)]),
        2 => {
            let b2 = &b + int(2);
            Some(vec![int(4) * &b2 * &b, int(-16) * b2, int(16)])
        }
        _ => None,
    }
}

fn hermite_eq(sink: &mut Sink, ctx: &DunklContext, ell: u32, t_max: u32, inject_fault: bool) {
    let Some(basis) = sink.fail_on_error("harmonic basis", &[ell], harmonic_basis(ctx, ell)) else {
        return;
    };
    let mut profiles: Vec<Option<Vec<Rational>>> = vec![None; t_max as usize + 1];
    for (idx, h) in basis.elements.iter().enumerate() {
        let mut prev: Option<HermiteRecord> = None;
        for t in 0..=t_max {
            let Some(rec) = sink.fail_on_error(&format!("recursion t={t} on harmonic {idx}"), &[t, ell], Construction::Recursion.build(ctx, t, h))
            else {
                break;
            };
            if let Some(coeffs) = table_coefficients(t, ell, ctx.mu()) {
                sink.zero(
                    &format!("table form t={t} on harmonic {idx}"),
                    &[t, ell],
                    Ok(rec.polynomial.clone() - assemble_radial(&coeffs, h)),
                );
            }
            for c in [Construction::Rodrigues, Construction::Laguerre] {
                let r = c.build(ctx, t, h).map(|other| other.polynomial - rec.polynomial.clone());
                sink.zero(&format!("{} - recursion t={t} on harmonic {idx}", c.name()), &[t, ell], r);
            }
            let r = ch_oscillator(ctx, t, h).map(|other| other.polynomial - rec.polynomial.clone());
            sink.zero(&format!("oscillator - recursion t={t} on harmonic {idx}"), &[t, ell], r);
            sink.equal(
                &format!("top coefficient t={t} on harmonic {idx}"),
                &[t, ell],
                format_rational(&pow(&int(-4), t)),
                Ok(rec.radial_coeffs.last().map(format_rational).unwrap_or_default()),
            );
            let profile = &mut profiles[t as usize];
            match profile {
                None => *profile = Some(rec.radial_coeffs.clone()),
                Some(first) => sink.equal(
                    &format!("radial profile t={t} of harmonic {idx} equals harmonic 0"),
                    &[t, ell],
                    first.iter().map(format_rational).collect::<Vec<_>>().join(","),
                    Ok(rec.radial_coeffs.iter().map(format_rational).collect::<Vec<_>>().join(",")),
                ),
            }
            let mut checked = rec.clone();
            if inject_fault && t == 2 {
                checked.radial_coeffs[1] += Rational::one();
            }
            if let Some(p) = &prev {
                let verdict = coefficient_recursions_check(p, &checked);
                let residual = match verdict.incompatible {
                    Some(msg) => Err(crate::Error::InhomogeneousInput(msg)),
                    None => Ok(verdict.residual_polynomial(h)),
                };
                sink.zero(&format!("coefficient relations t={t} on harmonic {idx}"), &[t, ell], residual);
            }
            prev = Some(rec);
        }
    }
}

enum DiffeqUnit {
    Clifford(u32),
    Rosler(u32),
}

fn diffeq(sink: &mut Sink, ctx: &DunklContext, unit: &DiffeqUnit, t_max: u32) {
    match *unit {
        DiffeqUnit::Clifford(ell) => {
            let Some(basis) = sink.fail_on_error("harmonic basis", &[ell], harmonic_basis(ctx, ell)) else {
                return;
            };
            let lambda = laplace_beltrami_eigenvalue(ctx.mu(), ell);
            for (idx, h) in basis.elements.iter().enumerate() {
                for t in 0..=t_max {
                    let Some(rec) = sink.fail_on_error("recursion", &[t, ell], Construction::Recursion.build(ctx, t, h)) else {
                        break;
                    };
                    let q = &rec.polynomial;
                    let n = 2 * t + ell;
                    sink.zero(&format!("(L - 2E + 2n) CH t={t} on harmonic {idx}"), &[t, ell], eigen_residual(ctx, n, q));
                    sink.zero(
                        &format!("weighted equation on CH t={t}, harmonic {idx}"),
                        &[t, ell],
                        weighted_eigen_residual(ctx, n, q),
                    );
                    let r = ctx.laplace_beltrami(q).map(|lb| lb - q.scale(&lambda));
                    sink.zero(&format!("LB eigenvalue on CH t={t}, harmonic {idx}"), &[t, ell], r);
                }
            }
        }
        DiffeqUnit::Rosler(n) => {
            for (mono, p) in monomials(ctx, n) {
                let Some(q) = sink.fail_on_error(&format!("rosler({mono})"), &[n], rosler_hermite(ctx, &p)) else {
                    continue;
                };
                sink.zero(&format!("(L - 2E + 2n) rosler({mono})"), &[n], eigen_residual(ctx, n, &q));
                sink.zero(&format!("weighted equation on rosler({mono})"), &[n], weighted_eigen_residual(ctx, n, &q));
            }
        }
    }
}

enum RoeslerUnit {
    Span(u32),
    Heat(u32),
}

fn roesler(sink: &mut Sink, ctx: &DunklContext, unit: &RoeslerUnit) {
    match *unit {
        RoeslerUnit::Span(n) => {
            if let Some(v) = sink.fail_on_error("eigenspace", &[n], eigenspace_checks(ctx, n)) {
                for f in v.failures {
                    sink.zero(&format!("eigen equation on {}", f.label), &[n], Ok(f.residual));
                }
                sink.equal("rank of the Rösler family", &[n], v.dim, Ok(v.rosler_rank));
                sink.equal("rank of the Clifford-Hermite family", &[n], v.dim, Ok(v.ch_rank));
                sink.equal("rank of both families together", &[n], v.dim, Ok(v.combined_rank));
            }
            let Some(table) = sink.fail_on_error("proportionality", &[n], proportionality_table(ctx, n)) else {
                return;
            };
            for (i, idx, c) in &table {
                let first = table.iter().find(|(j, _, _)| j == i).map(|(_, _, c)| c.clone()).unwrap();
                sink.equal(
                    &format!("proportionality constant i={i} of harmonic {idx} equals harmonic 0"),
                    &[n, *i],
                    format_rational(&first),
                    Ok(format_rational(c)),
                );
            }
            if n == 2 {
                let c = table.iter().find(|(i, _, _)| *i == 1).map(|(_, _, c)| format_rational(c));
                sink.equal("proportionality constant at i=1, H=1", &[n, 1], "-1/1".to_string(), Ok(c.unwrap_or_default()));
            }
        }
        RoeslerUnit::Heat(d) => {
            for (mono, p) in monomials(ctx, d) {
                let Some(q) = sink.fail_on_error(&format!("heat({mono})"), &[d], ctx.heat_semigroup(&p)) else {
                    continue;
                };
                sink.zero(
                    &format!("top part of heat({mono})"),
                    &[d],
                    Ok(q.homogeneous_part(d) - p.clone()),
                );
                sink.equal(&format!("degree of heat({mono})"), &[d], d, Ok(q.degree().unwrap_or(0)));
                sink.zero(
                    &format!("inverse heat of heat({mono})"),
                    &[d],
                    ctx.heat_semigroup_inverse(&q).map(|r| r - p.clone()),
                );
            }
        }
    }
}

fn orthogonality(sink: &mut Sink, ctx: &DunklContext, &max_n: &u32) {
    let Some(report) = sink.fail_on_error("orthogonality report", &[max_n], orthogonality_report(ctx, max_n)) else {
        return;
    };
    for e in report {
        let (l, r) = (e.left, e.right);
        let check = format!(
            "<CH(t={},l={},h={}), CH(t={},l={},h={})>",
            l.t, l.ell, l.h_index, r.t, r.ell, r.h_index
        );
        let degrees = [2 * l.t + l.ell, 2 * r.t + r.ell];
        let got = format_rational(&e.value.coefficient);
        if e.violates() {
            let expected = if l == r { "positive" } else { "0/1" };
            sink.equal(&check, &degrees, expected.to_string(), Ok(got));
        } else {
            sink.equal(&check, &degrees, got.clone(), Ok(got));
        }
    }
}

enum ClassicalUnit {
    Harmonic(u32),
    Monogenic(u32),
}

fn classical(sink: &mut Sink, ctx: &DunklContext, unit: &ClassicalUnit, t_max: u32) {
    let m = ctx.dim();
    let mu = int(m as i64);
    match *unit {
        ClassicalUnit::Harmonic(ell) => {
            let Some(basis) = sink.fail_on_error("harmonic basis", &[ell], harmonic_basis(ctx, ell)) else {
                return;
            };
            for (idx, h) in basis.elements.iter().enumerate() {
                let classical_lap = (|| {
                    let mut acc = Polynomial::zero(m);
                    for i in 0..m {
                        acc = acc + h.partial(i)?.partial(i)?;
                    }
                    Ok(acc)
                })();
                sink.zero(&format!("classical Laplacian of harmonic {idx}"), &[ell], classical_lap);
                for t in 0..=t_max {
                    let coeffs = table_coefficients(t, ell, &mu).expect("t ≤ 2");
                    let expected = assemble_radial(&coeffs, h);
                    let r = ch_recursion_poly(ctx, t, h).map(|p| p - expected.clone());
                    sink.zero(&format!("CH t={t} vs classical table on harmonic {idx}"), &[t, ell], r);
                    let r = d_plus_power(ctx, 2 * t, &CliffordPolynomial::scalar(h.clone()))
                        .map(|c| &c - &CliffordPolynomial::scalar(expected.clone()));
                    sink.zero_clifford(&format!("D+^{} H vs classical table on harmonic {idx}", 2 * t), &[t, ell], r);
                }
            }
        }
        ClassicalUnit::Monogenic(ell) => {
            let Some(basis) = sink.fail_on_error("monogenic basis", &[ell], monogenic_basis(ctx, ell)) else {
                return;
            };
            for (idx, mg) in basis.iter().enumerate() {
                let x = mg.vector_multiply();
                let r = d_plus(ctx, mg).map(|c| &c - &x.scale(&int(2)));
                sink.zero_clifford(&format!("D+ M - 2xM on monogenic {idx}"), &[1, ell], r);
                let x3 = x.vector_multiply().vector_multiply();
                let c = int(4) * int(2 * ell as i64 + m as i64 + 2);
                let expected = &x3.scale(&int(8)) + &x.scale(&c);
                let r = d_plus_power(ctx, 3, mg).map(|c| &c - &expected);
                sink.zero_clifford(&format!("D+^3 M - (8x^3 + 4(2l+m+2)x) M on monogenic {idx}"), &[3, ell], r);
            }
        }
    }
}

fn ch_recursion_poly(ctx: &DunklContext, t: u32, h: &Polynomial) -> Result<Polynomial> {
    Ok(Construction::Recursion.build(ctx, t, h)?.polynomial)
}
