//! Command-line front end: datum files, computations and verification suites.
//!
//! Exit codes: `0` when every check passes, `1` when a mathematical check
//! fails, `2` for usage, input, applicability and budget errors.

mod compute;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::automorphisms::AutError;
use crate::cohomology::CohomologyError;
use crate::datum::{catalog, BaseRing, DatumError, DatumSpec, RootDatum};
use crate::ext::ExtError;
use crate::groups::GroupError;
use crate::linalg::RationalModZVector;

pub use report::{CheckRow, Observed, Origin, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("not applicable: {0}")]
    Inapplicable(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Automorphism(#[from] AutError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "rootdatum", version, about = "Exact computations with Z- and Z_p-root data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a catalog datum as JSON.
    Catalog(CatalogArgs),
    /// Run a computation on a datum file.
    Compute(ComputeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Work over the p-adic integers.
    #[arg(long, conflicts_with = "ring")]
    pub p: Option<i64>,
    /// Work over the integers (only `Z` is accepted).
    #[arg(long)]
    pub ring: Option<String>,
}

impl RingArgs {
    fn base_ring(&self) -> Result<Option<BaseRing>, CliError> {
        match (&self.p, &self.ring) {
            (Some(p), _) => {
                if *p < 2 || !(2..*p).take_while(|d| d * d <= *p).all(|d| p % d != 0) {
                    return Err(CliError::Usage(format!("--p {p} is not a prime")));
                }
                Ok(Some(BaseRing::Padic(*p)))
            }
            (None, Some(r)) if r == "Z" => Ok(Some(BaseRing::Integers)),
            (None, Some(r)) => Err(CliError::Usage(format!("--ring {r}: only Z is accepted; use --p for p-adic rings"))),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write output to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Memory budget for bar-resolution computations.
    #[arg(long, value_name = "MB")]
    pub budget: Option<u64>,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Family or datum name, e.g. `SU`, `Spin(5)`, `SU(2)xSO(3)`, `DI4`, `quotient`.
    pub name: String,
    /// Family parameters, e.g. `2` for `SU 2`, or `Spin5xS1 diag-C2` for `quotient`.
    pub params: Vec<String>,
    #[command(flatten)]
    pub ring: RingArgs,
    /// Truncate the matrices modulo p^k.
    #[arg(long)]
    pub trunc: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeKind {
    Validate,
    Center,
    Cohomology,
    Normalizer,
    Out,
    Centralizer,
    Isomorphic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    All,
    Bockstein,
    Fox,
    Truncated,
    Direct,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub kind: ComputeKind,
    #[arg(long)]
    pub datum: PathBuf,
    #[command(flatten)]
    pub ring: RingArgs,
    /// Truncation level k for the truncated method.
    #[arg(long)]
    pub trunc: Option<u32>,
    /// Cohomological degree.
    #[arg(long, default_value_t = 1)]
    pub deg: usize,
    /// Coefficient module (only `torus`).
    #[arg(long, default_value = "torus")]
    pub coeff: String,
    /// Restrict to the subgroup generated by this reflection (by reflection index).
    #[arg(long)]
    pub reflection: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,
    /// Torus point such as `1/2,0`; may be repeated.
    #[arg(long = "point")]
    pub points: Vec<String>,
    /// Second datum file for isomorphism tests.
    #[arg(long)]
    pub other: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of gen210, reconstr, torsor, tsurj, h1calc, exactseq, splitting, wdi4, b2family, products-pullback.
    pub suite: String,
    #[arg(long, conflicts_with = "builtin_set")]
    pub datum: Option<PathBuf>,
    /// One of rank2, coxeter, b2family, all, gen210, exactseq, odd.
    #[arg(long)]
    pub builtin_set: Option<String>,
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Run the command line and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Run a parsed command, returning the exit code for a completed run.
pub fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Catalog(a) => {
            let d = catalog_datum(&a)?;
            emit(&a.out, &format!("{}\n", d.to_json()))?;
            Ok(0)
        }
        Command::Compute(a) => {
            let start = Instant::now();
            let mut report = compute::run(&a)?;
            finish(&mut report, &a.output, start)
        }
        Command::Verify(a) => {
            let start = Instant::now();
            let mut report = verify(&a)?;
            finish(&mut report, &a.output, start)
        }
    }
}

fn finish(report: &mut Report, out: &OutputArgs, start: Instant) -> Result<i32, CliError> {
    if out.timings {
        report.timing("total", start.elapsed().as_millis());
    }
    let text = match out.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => report.to_text(),
    };
    emit(&out.out, &text)?;
    Ok(if report.passed { 0 } else { 1 })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The datum selected by `catalog NAME [PARAMS]`.
pub fn catalog_datum(a: &CatalogArgs) -> Result<RootDatum, CliError> {
    let unknown = |e: DatumError| match e {
        DatumError::UnknownName(n) => CliError::Usage(format!("unknown catalog entry {n}")),
        other => CliError::Datum(other),
    };
    let d = if a.name.eq_ignore_ascii_case("quotient") {
        quotient(&a.params)?
    } else {
        let param = match a.params.as_slice() {
            [] => None,
            [k] => Some(k.parse::<usize>().map_err(|_| CliError::Usage(format!("parameter {k} is not a number")))?),
            _ => return Err(CliError::Usage(format!("{} takes at most one parameter", a.name))),
        };
        catalog::family(&a.name, param).map_err(unknown)?
    };
    let d = match a.ring.base_ring()? {
        Some(r) if r != d.ring() => d.base_change(r)?,
        _ => d,
    };
    match a.trunc {
        None => Ok(d),
        Some(k) => {
            if d.ring().prime().is_none() {
                return Err(CliError::Usage("--trunc needs a p-adic datum (use --p)".into()));
            }
            let mut spec = d.canonical_spec();
            spec.precision = Some(k);
            Ok(RootDatum::from_spec(spec)?)
        }
    }
}

fn quotient(params: &[String]) -> Result<RootDatum, CliError> {
    let [base, sub] = params else {
        return Err(CliError::Usage("quotient takes a datum name and a central subgroup, e.g. Spin5xS1 diag-C2".into()));
    };
    let b = base.to_ascii_lowercase().replace(['(', ')', ' '], "");
    if b == "spin5xs1" && sub.eq_ignore_ascii_case("diag-C2") {
        return Ok(catalog::spin5_circle_quotient()?);
    }
    let d = catalog::by_name(base).map_err(|_| CliError::Usage(format!("unknown catalog entry {base}")))?;
    let point = parse_point(sub)?;
    Ok(catalog::central_quotient(&d, &[point])?)
}

/// Parse `1/2,0,1/3` as a point of `L ⊗ Q/Z`.
pub fn parse_point(s: &str) -> Result<RationalModZVector, CliError> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    RationalModZVector::parse(&items).map_err(|e| CliError::Usage(format!("torus point {s}: {e}")))
}

/// Read a datum file, reporting JSON errors with their location.
pub fn read_spec(path: &PathBuf) -> Result<(DatumSpec, String), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let spec: DatumSpec =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: malformed datum file: {e}", path.display())))?;
    Ok((spec, text))
}

pub fn load_datum(path: &PathBuf, ring: Option<BaseRing>) -> Result<(RootDatum, String), CliError> {
    let (spec, text) = read_spec(path)?;
    let d = RootDatum::from_spec(spec).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let d = match ring {
        Some(r) if r != d.ring() => d.base_change(r)?,
        _ => d,
    };
    Ok((d, text))
}

fn verify(a: &VerifyArgs) -> Result<Report, CliError> {
    let ring = a.ring.base_ring()?;
    let mut inputs = vec![a.suite.clone()];
    let data = match (&a.datum, &a.builtin_set) {
        (Some(p), _) => {
            let (d, text) = load_datum(p, ring)?;
            inputs.push(text);
            Some(vec![d])
        }
        (None, Some(set)) => {
            inputs.push(set.clone());
            let ds = suites::builtin_set(set)?;
            Some(match ring {
                Some(r) => ds.into_iter().map(|d| if d.ring() == r { Ok(d) } else { d.base_change(r) }).collect::<Result<_, _>>()?,
                None => ds,
            })
        }
        (None, None) => {
            if ring.is_some() {
                return Err(CliError::Usage("--p/--ring need --datum or --builtin-set".into()));
            }
            None
        }
    };
    if let Some(r) = ring {
        inputs.push(r.to_string());
    }
    if let Some(mb) = a.output.budget {
        let fixed = if a.suite == "b2family" { catalog::b2_family()? } else { Vec::new() };
        let degree = if a.suite == "b2family" { 2 } else { 1 };
        for d in data.iter().flatten().chain(&fixed) {
            compute::check_budget(d, degree, mb)?;
        }
    }
    let mut report = Report::new(&format!("verify {}", a.suite), &inputs);
    report.extend(suites::run(&a.suite, data)?);
    Ok(report)
}
