//! Exact verification suites. Every check compares two polynomial expressions
//! and reports the full nonzero residual on failure.

mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::DunklContext;
use crate::clifford::CliffordPolynomial;
use crate::error::{Error, Result};
use crate::groups::{builtin_root_system, Family};
use crate::poly::rational::{format_rational, rat};
use crate::poly::{Polynomial, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Commute,
    Sl2,
    /// `Δ_k(|x|^{2s} H)` for harmonic `H`.
    Lemma1,
    Anticommutator,
    Dplus2,
    Dirac2,
    Fischer,
    HermiteEq,
    Diffeq,
    Roesler,
    Orthogonality,
    Classical,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Commute,
        Suite::Sl2,
        Suite::Lemma1,
        Suite::Anticommutator,
        Suite::Dplus2,
        Suite::Dirac2,
        Suite::Fischer,
        Suite::HermiteEq,
        Suite::Diffeq,
        Suite::Roesler,
        Suite::Orthogonality,
        Suite::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Commute => "commute",
            Suite::Sl2 => "sl2",
            Suite::Lemma1 => "lemma1",
            Suite::Anticommutator => "anticommutator",
            Suite::Dplus2 => "dplus2",
            Suite::Dirac2 => "dirac2",
            Suite::Fischer => "fischer",
            Suite::HermiteEq => "hermite-eq",
            Suite::Diffeq => "diffeq",
            Suite::Roesler => "roesler",
            Suite::Orthogonality => "orthogonality",
            Suite::Classical => "classical",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Profile {
    #[default]
    Desk,
    Ci,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Profile::Desk),
            "ci" => Ok(Profile::Ci),
            _ => Err(Error::Parse(format!("unknown profile {s:?}"))),
        }
    }
}

/// Size caps for one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sizes {
    /// Monomial degree for scalar operator identities.
    pub max_deg: u32,
    /// Monomial degree for Clifford-valued identities.
    pub clifford_deg: u32,
    pub fischer_deg: u32,
    pub heat_deg: u32,
    pub radial_ell: u32,
    pub radial_s: u32,
    pub kappa_draws: usize,
    pub t_max: u32,
    pub ell_max: u32,
    pub rosler_deg: u32,
    pub proportionality_deg: u32,
    pub orthogonality_deg: u32,
    pub orthogonality_kappa: u32,
    pub monogenic_ell: u32,
}

impl Sizes {
    pub fn for_profile(profile: Profile) -> Self {
        match profile {
            Profile::Desk => Sizes {
                max_deg: 6,
                clifford_deg: 5,
                fischer_deg: 6,
                heat_deg: 8,
                radial_ell: 4,
                radial_s: 3,
                kappa_draws: 5,
                t_max: 3,
                ell_max: 3,
                rosler_deg: 5,
                proportionality_deg: 4,
                orthogonality_deg: 5,
                orthogonality_kappa: 2,
                monogenic_ell: 2,
            },
            Profile::Ci => Sizes {
                max_deg: 4,
                clifford_deg: 3,
                fischer_deg: 4,
                heat_deg: 5,
                radial_ell: 3,
                radial_s: 2,
                kappa_draws: 2,
                t_max: 2,
                ell_max: 2,
                rosler_deg: 3,
                proportionality_deg: 3,
                orthogonality_deg: 3,
                orthogonality_kappa: 1,
                monogenic_ell: 1,
            },
        }
    }

    /// Lowers every monomial-degree cap to at most `d`.
    pub fn cap_degree(mut self, d: u32) -> Self {
        self.max_deg = d;
        self.clifford_deg = self.clifford_deg.min(d);
        self.fischer_deg = self.fischer_deg.min(d);
        self.heat_deg = self.heat_deg.min(d + 2);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub sizes: Sizes,
    pub seed: u64,
    /// Perturbs `a₂` of every `t = 2` record before the coefficient relations are checked.
    pub inject_fault: bool,
    pub timing: bool,
}

impl VerifyConfig {
    pub fn new(profile: Profile) -> Self {
        VerifyConfig { sizes: Sizes::for_profile(profile), seed: DEFAULT_SEED, inject_fault: false, timing: false }
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self::new(Profile::Desk)
    }
}

/// The exact defect of a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Residual {
    Scalar(Polynomial),
    Clifford(CliffordPolynomial),
    Mismatch { expected: String, got: String },
    Error { error: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub suite: String,
    pub group: String,
    pub kappa: Vec<String>,
    pub check: String,
    pub degrees: Vec<u32>,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteVerdict {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl SuiteVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Collects cases and failures for one context.
pub(crate) struct Sink<'a> {
    suite: Suite,
    ctx: &'a DunklContext,
    cases: usize,
    failures: Vec<Failure>,
}

impl<'a> Sink<'a> {
    fn new(suite: Suite, ctx: &'a DunklContext) -> Self {
        Sink { suite, ctx, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, check: &str, degrees: &[u32], residual: Option<Residual>) {
        self.cases += 1;
        if let Some(residual) = residual {
            let rs = self.ctx.root_system();
            self.failures.push(Failure {
                suite: self.suite.name().to_string(),
                group: rs.label().to_string(),
                kappa: rs.orbit_kappas().iter().map(format_rational).collect(),
                check: check.to_string(),
                degrees: degrees.to_vec(),
                residual,
            });
        }
    }

    /// Passes iff the residual is the zero polynomial.
    pub(crate) fn zero(&mut self, check: &str, degrees: &[u32], r: Result<Polynomial>) {
        let residual = match r {
            Ok(p) if p.is_zero() => None,
            Ok(p) => Some(Residual::Scalar(p)),
            Err(e) => Some(Residual::Error { error: e.to_string() }),
        };
        self.record(check, degrees, residual);
    }

    pub(crate) fn zero_clifford(&mut self, check: &str, degrees: &[u32], r: Result<CliffordPolynomial>) {
        let residual = match r {
            Ok(p) if p.is_zero() => None,
            Ok(p) => Some(Residual::Clifford(p)),
            Err(e) => Some(Residual::Error { error: e.to_string() }),
        };
        self.record(check, degrees, residual);
    }

    pub(crate) fn equal<T: PartialEq + fmt::Display>(&mut self, check: &str, degrees: &[u32], expected: T, got: Result<T>) {
        let residual = match got {
            Ok(g) if g == expected => None,
            Ok(g) => Some(Residual::Mismatch { expected: expected.to_string(), got: g.to_string() }),
            Err(e) => Some(Residual::Error { error: e.to_string() }),
        };
        self.record(check, degrees, residual);
    }

    pub(crate) fn fail_on_error<T>(&mut self, check: &str, degrees: &[u32], r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(check, degrees, Some(Residual::Error { error: e.to_string() }));
                None
            }
        }
    }
}

/// One multiplicity drawn from `{n/d : d ∈ 1..=4} ∩ [0, 3]`.
fn draw_kappa(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=4i64);
    let n = rng.gen_range(0..=3 * d);
    rat(n, d)
}

/// ℤ₂¹, ℤ₂², A₂ in ℝ³ and B₂, each with `draws` seeded multiplicity vectors.
pub fn sample_contexts(seed: u64, draws: usize) -> Vec<DunklContext> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = [(Family::Z2, 1, 1), (Family::Z2, 2, 2), (Family::A, 3, 1), (Family::B, 2, 2)];
    let mut out = Vec::new();
    for (family, m, orbits) in groups {
        for _ in 0..draws {
            let kappas: Vec<Rational> = (0..orbits).map(|_| draw_kappa(&mut rng)).collect();
            let rs = builtin_root_system(family, m, &kappas).expect("sample group is valid");
            out.push(DunklContext::new(rs).expect("sample group is valid"));
        }
    }
    out
}

/// `ℤ₂^m` contexts with every integer multiplicity vector in `{0..=max_kappa}^m`, `m ≤ max_m`.
pub fn coordinate_contexts(max_m: usize, max_kappa: u32) -> Vec<DunklContext> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        let count = (max_kappa as usize + 1).pow(m as u32);
        for code in 0..count {
            let mut c = code;
            let kappas: Vec<Rational> = (0..m)
                .map(|_| {
                    let k = c % (max_kappa as usize + 1);
                    c /= max_kappa as usize + 1;
                    rat(k as i64, 1)
                })
                .rev()
                .collect();
            out.push(DunklContext::new(builtin_root_system(Family::Z2, m, &kappas).unwrap()).unwrap());
        }
    }
    out
}

/// Multiplicity-free contexts `ℤ₂^m`, `m ∈ dims`.
pub fn classical_contexts(dims: &[usize]) -> Vec<DunklContext> {
    dims.iter()
        .map(|&m| {
            let zeros = vec![rat(0, 1); m];
            DunklContext::new(builtin_root_system(Family::Z2, m, &zeros).unwrap()).unwrap()
        })
        .collect()
}

/// Runs `body` over every `(context, unit)` pair in parallel and merges in order.
pub(crate) fn run_units<U, F>(suite: Suite, ctxs: &[DunklContext], units: &[U], body: F) -> (usize, Vec<Failure>)
where
    U: Sync,
    F: Fn(&mut Sink, &DunklContext, &U) + Sync,
{
    let jobs: Vec<(usize, usize)> = (0..ctxs.len()).flat_map(|c| (0..units.len()).map(move |u| (c, u))).collect();
    let results: Vec<(usize, Vec<Failure>)> = jobs
        .par_iter()
        .map(|&(c, u)| {
            let mut sink = Sink::new(suite, &ctxs[c]);
            body(&mut sink, &ctxs[c], &units[u]);
            (sink.cases, sink.failures)
        })
        .collect();
    let mut cases = 0;
    let mut failures = Vec::new();
    for (n, f) in results {
        cases += n;
        failures.extend(f);
    }
    (cases, failures)
}

fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("DUNKL_NUM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// Runs one suite. Parallelism is capped by `DUNKL_NUM_THREADS`.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteVerdict {
    let start = Instant::now();
    let (cases, failures) = thread_pool().install(|| suites::run(suite, config));
    SuiteVerdict {
        suite: suite.name().to_string(),
        cases,
        failures,
        wall_time_ms: config.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs every suite in order, merged into one verdict named `all`.
pub fn run_all(config: &VerifyConfig) -> SuiteVerdict {
    let start = Instant::now();
    let pool = thread_pool();
    let mut cases = 0;
    let mut failures = Vec::new();
    for suite in Suite::ALL {
        let (n, f) = pool.install(|| suites::run(suite, config));
        cases += n;
        failures.extend(f);
    }
    SuiteVerdict {
        suite: "all".to_string(),
        cases,
        failures,
        wall_time_ms: config.timing.then(|| start.elapsed().as_millis() as u64),
    }
}
