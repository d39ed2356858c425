use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dunkl::calculus::DunklContext;
use dunkl::groups::{builtin_root_system, Family, RootSystem, RootSystemJson};
use dunkl::hermite::{fischer_decompose, harmonic_basis, Construction, HermiteRecord};
use dunkl::poly::rational::{format_rational, parse_rational};
use dunkl::poly::Polynomial;
use dunkl::verify::{run_all, run_suite, Profile, Residual, Suite, SuiteVerdict, VerifyConfig, DEFAULT_SEED};
use dunkl::{Error, ErrorClass};

#[derive(Parser)]
#[command(name = "dunkl", version, about = "Exact Dunkl operators and Clifford–Hermite polynomials")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, orbits, γ and μ of a reflection group.
    GroupInfo(GroupArgs),
    /// One Clifford–Hermite polynomial CH_{2t}(H) for a canonical harmonic H.
    Hermite {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 0)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        /// Position of H in the canonical harmonic basis of degree ell.
        #[arg(long, default_value_t = 0)]
        h_index: usize,
        #[arg(long, value_enum, default_value_t = ConstructionArg::Recursion)]
        construction: ConstructionArg,
    },
    /// Fischer decomposition of a homogeneous polynomial.
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        /// Polynomial JSON, e.g. '{"m":2,"terms":[{"c":"1","e":[2,0]}]}'.
        #[arg(long, conflicts_with = "poly_file", required_unless_present = "poly_file")]
        poly: Option<String>,
        #[arg(long)]
        poly_file: Option<PathBuf>,
    },
    /// Run verification suites; exits 4 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value_t = ProfileArg::Desk)]
        profile: ProfileArg,
        /// Cap on monomial degrees for operator identities.
        #[arg(long)]
        max_deg: Option<u32>,
        /// Seed for the multiplicity draws.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Include wall time in the verdict.
        #[arg(long)]
        timing: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, value_enum, requires_all = ["m", "kappa"], required_unless_present = "group_file")]
    group: Option<FamilyArg>,
    #[arg(long, requires = "group")]
    m: Option<usize>,
    /// One multiplicity per orbit, comma-separated rationals.
    #[arg(long, allow_hyphen_values = true, requires = "group")]
    kappa: Option<String>,
    /// Root system JSON with positive_roots and multiplicities.
    #[arg(long, conflicts_with = "group")]
    group_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Z2,
    A,
    B,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Recursion,
    Rodrigues,
    Laguerre,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Desk,
    Ci,
}

enum Failure {
    Input(String),
    Math(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Math(e) => match e.class() {
                ErrorClass::InvalidInput => 2,
                ErrorClass::Precondition => 3,
                ErrorClass::Internal => 4,
            },
            Failure::Verification(_) => 4,
        }
    }
}

fn build_group(args: &GroupArgs) -> Result<RootSystem, Failure> {
    if let Some(path) = &args.group_file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let parsed: RootSystemJson =
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Ok(parsed.build()?);
    }
    let family = match args.group.expect("clap enforces a group source") {
        FamilyArg::Z2 => Family::Z2,
        FamilyArg::A => Family::A,
        FamilyArg::B => Family::B,
        FamilyArg::D => Family::D,
    };
    let kappas = args
        .kappa
        .as_deref()
        .unwrap_or_default()
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(builtin_root_system(family, args.m.unwrap_or_default(), &kappas)?)
}

fn context(args: &GroupArgs) -> Result<DunklContext, Failure> {
    Ok(DunklContext::new(build_group(args)?)?)
}

fn strs(v: &[dunkl::poly::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn group_info(rs: &RootSystem, pretty: bool) -> String {
    let orbits: Vec<Value> = rs
        .orbits()
        .iter()
        .map(|o| json!({ "roots": o, "kappa": format_rational(rs.kappa(o[0])) }))
        .collect();
    if pretty {
        let mut out = format!("{} in dimension {}\n", rs.label(), rs.dim());
        for (i, r) in rs.positive_roots().iter().enumerate() {
            let _ = writeln!(out, "  root {i}: ({})  kappa {}", strs(r).join(", "), format_rational(rs.kappa(i)));
        }
        let _ = write!(out, "gamma = {}\nmu = {}", format_rational(rs.gamma()), format_rational(rs.mu()));
        return out;
    }
    json!({
        "label": rs.label(),
        "m": rs.dim(),
        "positive_roots": rs.positive_roots().iter().map(|r| strs(r)).collect::<Vec<_>>(),
        "orbits": orbits,
        "gamma": format_rational(rs.gamma()),
        "mu": format_rational(rs.mu()),
    })
    .to_string()
}

fn pretty_record(r: &HermiteRecord) -> String {
    format!(
        "t = {}, ell = {}, mu = {}\nradial coefficients: [{}]\nharmonic: {}\npolynomial: {}",
        r.t,
        r.ell,
        format_rational(&r.mu),
        strs(&r.radial_coeffs).join(", "),
        r.harmonic,
        r.polynomial
    )
}

fn hermite(
    ctx: &DunklContext,
    t: u32,
    ell: u32,
    h_index: usize,
    construction: ConstructionArg,
    pretty: bool,
) -> Result<String, Failure> {
    let basis = harmonic_basis(ctx, ell)?;
    let h = basis
        .elements
        .get(h_index)
        .ok_or(Error::HarmonicIndex { index: h_index, ell, dim: basis.len() })?;
    let single = match construction {
        ConstructionArg::Recursion => Some(Construction::Recursion),
        ConstructionArg::Rodrigues => Some(Construction::Rodrigues),
        ConstructionArg::Laguerre => Some(Construction::Laguerre),
        ConstructionArg::All => None,
    };
    if let Some(c) = single {
        let rec = c.build(ctx, t, h)?;
        return Ok(if pretty { pretty_record(&rec) } else { serde_json::to_string(&rec).unwrap() });
    }
    let records = Construction::ALL
        .iter()
        .map(|c| Ok((c.name(), c.build(ctx, t, h)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let agree = records.windows(2).all(|w| w[0].1 == w[1].1);
    if pretty {
        let mut out = String::new();
        for (name, rec) in &records {
            let _ = writeln!(out, "[{name}]\n{}", pretty_record(rec));
        }
        let _ = write!(out, "agree: {agree}");
        return Ok(out);
    }
    let mut obj = serde_json::Map::new();
    for (name, rec) in &records {
        obj.insert(name.to_string(), serde_json::to_value(rec).unwrap());
    }
    obj.insert("agree".into(), Value::Bool(agree));
    Ok(Value::Object(obj).to_string())
}

fn decompose(ctx: &DunklContext, poly: Option<&str>, poly_file: Option<&PathBuf>, pretty: bool) -> Result<String, Failure> {
    let text = match (poly, poly_file) {
        (Some(s), _) => s.to_string(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        (None, None) => unreachable!("clap requires a polynomial"),
    };
    let p: Polynomial = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("polynomial JSON: {e}")))?;
    if p.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch { left: ctx.dim(), right: p.dim() }.into());
    }
    let degree = p.homogeneous_degree()?;
    let components = fischer_decompose(ctx, &p)?;
    if pretty {
        let mut out = format!("{p}\n");
        for c in &components {
            let _ = writeln!(out, "  i = {}: |x|^{} * ({})", c.i, 2 * c.i, c.harmonic);
        }
        return Ok(out.trim_end().to_string());
    }
    Ok(json!({
        "mu": format_rational(ctx.mu()),
        "degree": degree,
        "components": components,
    })
    .to_string())
}

fn residual_text(r: &Residual) -> String {
    match r {
        Residual::Scalar(p) => p.to_string(),
        Residual::Clifford(c) => serde_json::to_string(c).unwrap(),
        Residual::Mismatch { expected, got } => format!("expected {expected}, got {got}"),
        Residual::Error { error } => format!("error: {error}"),
    }
}

fn pretty_verdict(v: &SuiteVerdict) -> String {
    let mut out = format!("suite {}: {} cases, {} failures", v.suite, v.cases, v.failures.len());
    if let Some(ms) = v.wall_time_ms {
        let _ = write!(out, ", {ms} ms");
    }
    for f in &v.failures {
        let _ = write!(
            out,
            "\n  [{}] {} kappa=({}) degrees={:?}: {}\n      residual: {}",
            f.suite,
            f.group,
            f.kappa.join(", "),
            f.degrees,
            f.check,
            residual_text(&f.residual)
        );
    }
    out
}

fn run(cli: Cli) -> Result<String, Failure> {
    let pretty = cli.pretty;
    match cli.command {
        Command::GroupInfo(g) => Ok(group_info(&build_group(&g)?, pretty)),
        Command::Hermite { group, t, ell, h_index, construction } => {
            hermite(&context(&group)?, t, ell, h_index, construction, pretty)
        }
        Command::Decompose { group, poly, poly_file } => {
            decompose(&context(&group)?, poly.as_deref(), poly_file.as_ref(), pretty)
        }
        Command::Verify { suite, profile, max_deg, seed, timing, inject_fault } => {
            let mut config = VerifyConfig::new(match profile {
                ProfileArg::Desk => Profile::Desk,
                ProfileArg::Ci => Profile::Ci,
            });
            if let Some(d) = max_deg {
                config.sizes = config.sizes.cap_degree(d);
            }
            config.seed = seed;
            config.timing = timing;
            config.inject_fault = inject_fault;
            let verdict = if suite == "all" { run_all(&config) } else { run_suite(suite.parse::<Suite>()?, &config) };
            let text = if pretty { pretty_verdict(&verdict) } else { serde_json::to_string(&verdict).unwrap() };
            if verdict.passed() {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.exit_code();
            match f {
                Failure::Verification(text) => emit(&text),
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Math(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
