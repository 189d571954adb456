//! Command-line front end for the canring kernel and stratum verifiers.

mod config;
mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use canring::groebner::GbOptions;
use canring::hilbert::{check_invariants_of, hilbert_series, HilbertSeries};
use canring::resolution::{canonical_twist, minimal_resolution, schreyer_resolution};
use canring::ring::{load_ideal_file, parse_poly, print_ideal_file, print_poly, AnyIdealFile, IdealFile};
use canring::strata::{self, Report, StratumInstance, StratumKind, Target, VerifyOptions};
use canring::{Error, Field, Ideal, PrimeField};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "canring", version, about = "Gröbner bases, Hilbert series and resolutions for weighted ideals")]
struct Cli {
    /// Prime for generated instances.
    #[arg(long, global = true, env = "CANRING_PRIME", default_value_t = 32003)]
    prime: u32,
    /// Seed for generated instances.
    #[arg(long, global = true, env = "CANRING_SEED", default_value_t = 1)]
    seed: u64,
    /// Degree bound for truncated bases and series comparisons.
    #[arg(long, global = true, env = "CANRING_TRUNCATION", default_value_t = 20)]
    truncation: u32,
    /// Seconds allowed per basis or resolution (0 = unlimited).
    #[arg(long, global = true, env = "CANRING_TIME_BUDGET", default_value_t = 300)]
    time_budget: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of an ideal file.
    Gb {
        file: PathBuf,
        /// Stop at the global truncation degree.
        #[arg(long)]
        truncated: bool,
    },
    /// Hilbert series of the quotient ring.
    Hilbert {
        file: PathBuf,
        /// Print coefficients of degrees 0..=UPTO.
        #[arg(long, default_value_t = 20)]
        upto: usize,
    },
    /// Ideal membership of one or more polynomials.
    Member { file: PathBuf, polys: Vec<String> },
    /// Elimination ideal after removing the named variables.
    Eliminate {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    /// Intersection of two ideals over the same ring.
    Intersect { first: PathBuf, second: PathBuf },
    /// Saturation by a polynomial.
    Saturate {
        file: PathBuf,
        #[arg(long)]
        by: String,
    },
    /// Minimal graded free resolution and Betti table.
    Resolve {
        file: PathBuf,
        /// Maximum number of syzygy steps.
        #[arg(long)]
        steps: Option<usize>,
        /// Keep the (possibly non-minimal) Schreyer resolution.
        #[arg(long)]
        schreyer: bool,
    },
    /// Run the checklist for a stratum kind or one of the special targets.
    Verify {
        target: String,
        /// Verify this ideal file instead of a generated instance.
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Degeneration checks for a family (b or dd).
    Family {
        base: FamilyBase,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Print a generated instance as an ideal file.
    Build {
        kind: String,
        /// Type A only: pass through (0:0:1:0).
        #[arg(long)]
        through_0010: bool,
    },
    /// Run every entry of a TOML configuration and aggregate the reports.
    Report {
        config: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyBase {
    B,
    Dd,
}

#[derive(clap::Args, Debug, Clone)]
struct Knobs {
    /// Force the free resolution on.
    #[arg(long, conflicts_with = "no_resolve")]
    resolve: bool,
    /// Skip the free resolution.
    #[arg(long)]
    no_resolve: bool,
    /// Type A: generate a surface through (0:0:1:0).
    #[arg(long)]
    through_0010: bool,
    /// Nonzero family parameters.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
    lambdas: Vec<u32>,
}

/// Failures sorted by exit code.
enum Failure {
    Parse(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::MissingImage(_) | Error::Ring(_) | Error::FieldMismatch | Error::RingMismatch => {
                Failure::Parse(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

/// Result of a verb: the JSON document and whether every check passed.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout(), "{}", output::render(&out.value, cli.format));
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

impl Cli {
    fn budget(&self) -> Option<Duration> {
        (self.time_budget > 0).then(|| Duration::from_secs(self.time_budget))
    }

    fn gb_opts(&self) -> GbOptions {
        GbOptions { truncation: None, time_budget: self.budget() }
    }

    fn field(&self) -> Result<PrimeField, Failure> {
        PrimeField::new(self.prime).map_err(|e| Failure::Parse(e.to_string()))
    }

    fn verify_opts(&self, knobs: &Knobs) -> VerifyOptions {
        VerifyOptions {
            truncation: self.truncation,
            time_budget: self.budget(),
            resolve: if knobs.resolve {
                Some(true)
            } else if knobs.no_resolve {
                Some(false)
            } else {
                None
            },
            lambdas: knobs.lambdas.clone(),
            through_0010: knobs.through_0010,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<AnyIdealFile, Failure> {
    load_ideal_file(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

/// Runs `$body` with `$file` bound to the `IdealFile` of whichever field the header names.
macro_rules! with_file {
    ($any:expr, |$file:ident| $body:expr) => {
        match $any {
            AnyIdealFile::Prime($file) => $body,
            AnyIdealFile::Rational($file) => $body,
        }
    };
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Gb { file, truncated } => {
            let opts = GbOptions { truncation: truncated.then_some(cli.truncation), ..cli.gb_opts() };
            with_file!(load(file)?, |f| gb_verb(&f, &opts))
        }
        Command::Hilbert { file, upto } => with_file!(load(file)?, |f| hilbert_verb(&f, *upto, cli)),
        Command::Member { file, polys } => with_file!(load(file)?, |f| member_verb(&f, polys, cli)),
        Command::Eliminate { file, vars } => with_file!(load(file)?, |f| eliminate_verb(&f, vars, cli)),
        Command::Intersect { first, second } => {
            let (a, b) = (load(first)?, load(second)?);
            match (a, b) {
                (AnyIdealFile::Prime(a), AnyIdealFile::Prime(b)) => intersect_verb(&a, &b, cli),
                (AnyIdealFile::Rational(a), AnyIdealFile::Rational(b)) => intersect_verb(&a, &b, cli),
                _ => Err(Failure::Parse("the two files use different fields".into())),
            }
        }
        Command::Saturate { file, by } => with_file!(load(file)?, |f| saturate_verb(&f, by, cli)),
        Command::Resolve { file, steps, schreyer } => {
            with_file!(load(file)?, |f| resolve_verb(&f, *steps, *schreyer, cli))
        }
        Command::Verify { target, ideal, knobs } => {
            let target: Target = target.parse().map_err(|e: Error| Failure::Parse(e.to_string()))?;
            let opts = cli.verify_opts(knobs);
            let report = match ideal {
                Some(path) => verify_file(target, path, &opts)?,
                None => strata::verify(target, cli.field()?, cli.seed, &opts),
            };
            Ok(report_outcome(&report))
        }
        Command::Family { base, knobs } => {
            let target = match base {
                FamilyBase::B => Target::FamilyB,
                FamilyBase::Dd => Target::FamilyDD,
            };
            let report = strata::verify(target, cli.field()?, cli.seed, &cli.verify_opts(knobs));
            Ok(report_outcome(&report))
        }
        Command::Build { kind, through_0010 } => {
            let kind: StratumKind = kind.parse().map_err(|e: Error| Failure::Parse(e.to_string()))?;
            let field = cli.field()?;
            let inst = match kind {
                StratumKind::TypeA => strata::build_type_a(field, cli.seed, *through_0010),
                _ => strata::build(kind, field, cli.seed)?,
            };
            let params: serde_json::Map<String, Value> =
                inst.parameters.iter().map(|(k, v)| (k.clone(), json!(print_poly(v)))).collect();
            Ok(Outcome::ok(json!({
                "kind": kind.name(),
                "seed": cli.seed,
                "prime": cli.prime,
                "ideal": inst.to_ideal_file(),
                "parameters": params,
            })))
        }
        Command::Report { config, jobs } => {
            let cfg = config::load(config)?;
            let reports = config::run_all(&cfg, cli, *jobs)?;
            let ok = reports.iter().all(Report::passed);
            let value = json!({
                "passed": ok,
                "reports": reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect::<Vec<_>>(),
            });
            Ok(Outcome { value, ok })
        }
    }
}

fn verify_file(target: Target, path: &Path, opts: &VerifyOptions) -> Result<Report, Failure> {
    let Target::Stratum(kind) = target else {
        return Err(Failure::Parse(format!("--ideal needs a stratum kind, not {target}")));
    };
    let file = match load(path)? {
        AnyIdealFile::Prime(f) => f,
        AnyIdealFile::Rational(_) => return Err(Failure::Parse("stratum checks run over a prime field".into())),
    };
    let ideal = Ideal::new(&file.ring, file.generators)?;
    let inst = StratumInstance::from_ideal(kind, ideal)?;
    Ok(strata::verify_instance(&inst, opts))
}

pub(crate) fn report_outcome(report: &Report) -> Outcome {
    Outcome { value: serde_json::to_value(report).expect("reports serialize"), ok: report.passed() }
}

fn ideal_of<F: Field>(f: &IdealFile<F>) -> Result<Ideal<F>, Failure> {
    Ok(Ideal::new(&f.ring, f.generators.clone())?)
}

fn gens_json<F: Field>(gens: &[canring::Polynomial<F>]) -> Value {
    json!(gens.iter().map(print_poly).collect::<Vec<_>>())
}

fn gb_verb<F: Field>(f: &IdealFile<F>, opts: &GbOptions) -> Result<Outcome, Failure> {
    let gb = ideal_of(f)?.groebner(opts)?;
    Ok(Outcome::ok(json!({
        "ring": f.ring.to_string(),
        "complete": gb.is_complete(),
        "truncation": gb.truncation(),
        "basis": gens_json(gb.elements()),
    })))
}

fn hilbert_verb<F: Field>(f: &IdealFile<F>, upto: usize, cli: &Cli) -> Result<Outcome, Failure> {
    let ideal = ideal_of(f)?;
    let hs = hilbert_series(&ideal, &cli.gb_opts())?;
    let coeffs = hs.coefficients(upto)?;
    let series = match &hs {
        HilbertSeries::Exact(s) => s.canonical().to_string(),
        HilbertSeries::Truncated { degree, .. } => format!("truncated at degree {degree}"),
    };
    let dimension = hs.exact().map(|s| s.canonical().pole_order());
    let inv = check_invariants_of(&coeffs, dimension.unwrap_or(3));
    Ok(Outcome::ok(json!({
        "ring": f.ring.to_string(),
        "series": series,
        "coefficients": coeffs,
        "dimension": dimension,
        "i_surface_invariants": inv.all_pass(),
    })))
}

fn member_verb<F: Field>(f: &IdealFile<F>, polys: &[String], cli: &Cli) -> Result<Outcome, Failure> {
    let gb = ideal_of(f)?.groebner(&cli.gb_opts())?;
    let mut rows = Vec::new();
    let mut all = true;
    for text in polys {
        let p = parse_poly(text, &f.ring)?;
        let member = gb.contains(&p)?;
        all &= member;
        rows.push(json!({"poly": print_poly(&p), "member": member, "normal_form": print_poly(&gb.normal_form(&p))}));
    }
    Ok(Outcome { value: json!({ "results": rows }), ok: all })
}

fn eliminate_verb<F: Field>(f: &IdealFile<F>, vars: &[String], cli: &Cli) -> Result<Outcome, Failure> {
    let drop = vars
        .iter()
        .map(|v| f.ring.var_index(v).ok_or_else(|| Failure::Parse(format!("unknown variable {v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let out = ideal_of(f)?.eliminate(&drop, &cli.gb_opts())?;
    Ok(Outcome::ok(json!({
        "ideal": print_ideal_file(out.ring(), out.generators()),
        "generators": gens_json(out.generators()),
    })))
}

fn intersect_verb<F: Field>(a: &IdealFile<F>, b: &IdealFile<F>, cli: &Cli) -> Result<Outcome, Failure> {
    if a.ring.names() != b.ring.names() || a.ring.weights() != b.ring.weights() {
        return Err(Failure::Parse("the two files use different rings".into()));
    }
    let second = Ideal::new(&a.ring, b.generators.iter().map(|g| g.reorder(&a.ring)).collect())?;
    let out = ideal_of(a)?.intersect(&second, &cli.gb_opts())?;
    Ok(Outcome::ok(json!({
        "ideal": print_ideal_file(out.ring(), out.generators()),
        "generators": gens_json(out.generators()),
    })))
}

fn saturate_verb<F: Field>(f: &IdealFile<F>, by: &str, cli: &Cli) -> Result<Outcome, Failure> {
    let p = parse_poly(by, &f.ring)?;
    let out = ideal_of(f)?.saturate(&p, &cli.gb_opts())?;
    Ok(Outcome::ok(json!({
        "ideal": print_ideal_file(out.ring(), out.generators()),
        "generators": gens_json(out.generators()),
    })))
}

fn resolve_verb<F: Field>(f: &IdealFile<F>, steps: Option<usize>, schreyer: bool, cli: &Cli) -> Result<Outcome, Failure> {
    let ideal = ideal_of(f)?;
    let res = if schreyer {
        schreyer_resolution(&ideal, steps, &cli.gb_opts())?
    } else {
        minimal_resolution(&ideal, steps, &cli.gb_opts())?
    };
    let betti = res.betti();
    let twist = canonical_twist(&betti, f.ring.weights()).ok();
    Ok(Outcome::ok(json!({
        "ring": f.ring.to_string(),
        "ranks": betti.ranks(),
        "complete": betti.complete,
        "last_twists": betti.last_twists(),
        "canonical_twist": twist,
        "betti": betti.to_string(),
    })))
}
