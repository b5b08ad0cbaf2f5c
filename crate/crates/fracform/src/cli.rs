//! The `fracform` command line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracform_core::{
    build_counterexample, build_gasket, effective_conductivity, iterate, renormalize, validate_triple,
    ConductivityTable, DirichletForm, Error, FractalTriple, GridConfig, WeightVector, DEFAULT_TOL,
};

use crate::format::{self, describe_violation, FormatError};
use crate::report::{write_trace, SearchReportJson};
use crate::{explain, sweep};

#[derive(Debug, Parser)]
#[command(name = "fracform", version, about = "Dirichlet-form renormalization on finitely ramified fractals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or validate fractal triples.
    #[command(subcommand)]
    Triple(TripleCommand),
    /// Work with Dirichlet forms on the boundary.
    #[command(subcommand)]
    Form(FormCommand),
    /// Apply the renormalization map once.
    Renorm(RenormArgs),
    /// Iterate the normalized renormalization map.
    Iterate(IterateArgs),
    /// Search a weight grid for self-similar energies.
    Search(SearchArgs),
    /// Certify the ring obstruction on seeded random forms.
    Certify(CertifyArgs),
    /// Print the inequality behind a certificate field.
    Explain {
        /// Topic; omit to list all topics.
        topic: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TripleKind {
    Counterexample,
    Gasket,
}

#[derive(Debug, Subcommand)]
pub enum TripleCommand {
    Build {
        #[arg(long, value_enum)]
        kind: TripleKind,
        /// Boundary size (gasket only; the ring triple always has 20).
        #[arg(long)]
        n: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Validate {
        path: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum FormCommand {
    /// Effective conductivity between two boundary labels.
    Conductivity {
        #[arg(long)]
        form: PathBuf,
        /// Two one-based labels, e.g. `1,2`.
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
    },
    /// The form with every coefficient equal to one.
    Unit {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Inputs {
    #[arg(long)]
    pub triple: PathBuf,
    #[arg(long)]
    pub form: PathBuf,
    #[arg(long)]
    pub weights: PathBuf,
}

#[derive(Debug, Args)]
pub struct RenormArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IterateArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, default_value_t = 200)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
    /// CSV step trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Final iterate as a form file.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub triple: PathBuf,
    /// Points per grid axis.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid: u32,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_axes: u32,
    #[arg(long, default_value_t = 200)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Shared weights file; defaults to all ones.
    #[arg(long, conflicts_with = "random_weights")]
    pub weights: Option<PathBuf>,
    /// Draw fresh weights for every sample.
    #[arg(long)]
    pub random_weights: bool,
    #[arg(long, default_value_t = DEFAULT_TOL, value_parser = positive)]
    pub tol: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected two labels separated by a comma")?;
    let label = |x: &str| -> Result<usize, String> {
        match x.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(format!("`{x}` is not a one-based label")),
        }
    };
    Ok((label(a)?, label(b)?))
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

/// A failed command and its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericalFailure(_) | Error::IterationFailure { .. } => CliError::Numerical(e.to_string()),
            Error::InvalidTriple(ref v) => {
                let lines: Vec<String> = v.iter().map(describe_violation).collect();
                CliError::Validation(format!("{e}:\n  {}", lines.join("\n  ")))
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

fn in_file(path: &Path, e: FormatError) -> CliError {
    match e {
        FormatError::Core(e) => match CliError::from(e) {
            CliError::Validation(m) => CliError::Validation(format!("{}: {m}", path.display())),
            other => other,
        },
        other => CliError::Validation(format!("{}: {other}", path.display())),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load_triple(path: &Path) -> Result<FractalTriple, CliError> {
    let file = format::parse_triple(&read(path)?).map_err(|e| in_file(path, e))?;
    validate_triple(&file.to_raw()).map_err(|e| in_file(path, e.into()))
}

fn load_form(path: &Path) -> Result<DirichletForm, CliError> {
    format::parse_form(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_weights(path: &Path) -> Result<WeightVector, CliError> {
    format::parse_weights(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_inputs(i: &Inputs) -> Result<(FractalTriple, DirichletForm, WeightVector), CliError> {
    Ok((load_triple(&i.triple)?, load_form(&i.form)?, load_weights(&i.weights)?))
}

/// Writes `text` to `path`, or to stdout when no path is given.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_owned(), source }),
        None => {
            io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

/// Runs one parsed command; human-readable progress goes to stderr.
pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Triple(TripleCommand::Build { kind, n, output }) => {
            let triple = match (kind, n) {
                (TripleKind::Counterexample, None | Some(20)) => build_counterexample(),
                (TripleKind::Counterexample, Some(n)) => {
                    return Err(CliError::Usage(format!("the ring triple has 20 boundary vertices, not {n}")))
                }
                (TripleKind::Gasket, Some(n)) => build_gasket(n)?,
                (TripleKind::Gasket, None) => return Err(CliError::Usage("--n is required for --kind gasket".into())),
            };
            emit(output.as_deref(), &format::triple_to_json(&triple))
        }
        Command::Triple(TripleCommand::Validate { path }) => {
            let t = load_triple(&path)?;
            println!(
                "{}: valid triple with {} boundary vertices, {} cells, {} level-1 vertices",
                path.display(),
                t.n_boundary(),
                t.n_cells(),
                t.n_level1()
            );
            Ok(())
        }
        Command::Form(FormCommand::Conductivity { form, pair: (a, b) }) => {
            let e = load_form(&form)?;
            let n = e.n_boundary();
            if a > n || b > n {
                return Err(CliError::Usage(format!("labels must lie in 1..={n}")));
            }
            let c = effective_conductivity(&e, a - 1, b - 1)?;
            println!("{}", format::format_f64(c));
            Ok(())
        }
        Command::Form(FormCommand::Unit { n, output }) => {
            if n < 2 {
                return Err(CliError::Usage("--n must be at least 2".into()));
            }
            emit(output.as_deref(), &format::form_to_json(&DirichletForm::unit(n)))
        }
        Command::Renorm(args) => {
            let (t, e, r) = load_inputs(&args.inputs)?;
            let out = renormalize(&t, &e, &r)?;
            emit(args.output.as_deref(), &format::form_to_json(&out))
        }
        Command::Iterate(args) => run_iterate(args),
        Command::Search(args) => {
            let t = load_triple(&args.triple)?;
            let config = GridConfig {
                levels: args.grid as usize,
                max_axes: args.max_axes as usize,
                max_steps: args.max_steps,
                tol: args.tol,
            };
            let start = Instant::now();
            let report = sweep::search(&t, &config);
            let json = SearchReportJson::from(&report);
            eprintln!(
                "{} grid points, {} converged, best residual {} at index {}; {:.2}s",
                json.point_count,
                json.converged_count,
                json.best_residual.map(format::format_f64).unwrap_or_else(|| "n/a".into()),
                json.best_index.map(|i| i.to_string()).unwrap_or_else(|| "n/a".into()),
                start.elapsed().as_secs_f64()
            );
            emit(args.output.as_deref(), &format::to_canonical_json(&json))
        }
        Command::Certify(args) => {
            let weights = match (&args.weights, args.random_weights) {
                (Some(p), _) => sweep::Weights::Fixed(load_weights(p)?),
                (None, true) => sweep::Weights::PerSample,
                (None, false) => sweep::Weights::Fixed(WeightVector::ones(20)),
            };
            if let sweep::Weights::Fixed(r) = &weights {
                if r.len() != 20 {
                    return Err(CliError::Validation(format!("the ring triple needs 20 weights, got {}", r.len())));
                }
            }
            let start = Instant::now();
            let report = sweep::certify(&weights, args.samples, args.seed, args.tol);
            eprintln!(
                "{} samples, {} failed, {} with violations; {:.2}s",
                report.sample_count,
                report.failed_samples,
                report.samples_with_violations,
                start.elapsed().as_secs_f64()
            );
            emit(args.output.as_deref(), &format::to_canonical_json(&report))?;
            if report.is_clean() {
                Ok(())
            } else {
                Err(CliError::Invariant(format!(
                    "{} samples failed and {} violate certificate invariants",
                    report.failed_samples, report.samples_with_violations
                )))
            }
        }
        Command::Explain { topic } => match topic {
            None => {
                for name in explain::names() {
                    println!("{name}");
                }
                Ok(())
            }
            Some(name) => match explain::lookup(&name) {
                Some(text) => {
                    println!("{text}");
                    Ok(())
                }
                None => Err(CliError::Usage(format!(
                    "unknown topic `{name}`; known topics: {}",
                    explain::names().collect::<Vec<_>>().join(", ")
                ))),
            },
        },
    }
}

/// Below this min/max conductivity ratio the iterates are treated as
/// collapsing towards a reducible form.
const REDUCIBLE_SPREAD: f64 = 1e-6;

fn conductivity_spread(form: &DirichletForm) -> Result<f64, CliError> {
    let table = ConductivityTable::of(form)?;
    let (lo, hi) = table.values().iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &c| (lo.min(c), hi.max(c)));
    Ok(lo / hi)
}

fn run_iterate(args: IterateArgs) -> Result<(), CliError> {
    let (t, e, r) = load_inputs(&args.inputs)?;
    let trace = iterate(&t, &e, &r, args.max_steps, args.tol)?;
    let last = trace.last();
    if trace.converged {
        println!(
            "converged after {} steps: residual {}, eigenvalue estimate {}",
            last.step,
            format::format_f64(last.residual.unwrap_or(f64::NAN)),
            format::format_f64(last.scale.unwrap_or(f64::NAN))
        );
    } else {
        println!(
            "no fixed point found within {} steps: best residual {}",
            last.step,
            trace.best_residual().map(format::format_f64).unwrap_or_else(|| "n/a".into())
        );
    }
    let spread = conductivity_spread(&last.form)?;
    println!("min/max effective conductivity of the last iterate: {}", format::format_f64(spread));
    if spread < REDUCIBLE_SPREAD {
        println!("warning: the iterates are approaching a reducible form; a small residual here does not indicate an irreducible fixed point");
    }
    if let Some(path) = &args.trace {
        let mut buf = Vec::new();
        write_trace(&trace, &mut buf).map_err(|e| CliError::Io { path: path.clone(), source: e.into() })?;
        fs::write(path, buf).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    if let Some(path) = &args.output {
        emit(Some(path), &format::form_to_json(&last.form))?;
    }
    Ok(())
}

/// Parses `args` and runs the command, mapping failures to exit statuses:
/// 1 usage or I/O, 2 invalid input, 3 numerical failure, 4 certificate
/// invariant violated.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
