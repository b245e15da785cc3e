//! Command-line front end: polytope and ring inspection, facet Seidel
//! elements, kernel scenario files and claim reproduction.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use toric_seidel::exec::Execution;
use toric_seidel::expr::ExprError;
use toric_seidel::novikov::NovikovError;
use toric_seidel::polytope::PolytopeError;
use toric_seidel::presentation::{NefOverride, PresentationError};
use toric_seidel::rational::{parse_rational, Rational};
use toric_seidel::reduce::ReduceError;
use toric_seidel::seidel::{SeidelError, SCENARIOS};

mod commands;
pub mod kernel;
pub mod manifest;
pub mod ring;

pub type Params = BTreeMap<String, Rational>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("parameter `{0}` given twice")]
    DuplicateParam(String),
    #[error("parameter `{name}` must be an integer, got {value}")]
    NotInteger { name: String, value: String },
    #[error("facet numbers start at 1, got {0}")]
    FacetIndex(usize),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Seidel(#[from] SeidelError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CLAIMS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser)]
#[command(
    name = "toric-seidel",
    version,
    about = "Exact quantum homology and Seidel elements of toric 4-manifolds"
)]
struct Cli {
    /// Write JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Evaluate searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Parameter binding, repeatable.
    #[arg(long = "param", value_name = "NAME=P/Q", value_parser = parse_param)]
    params: Vec<(String, Rational)>,
}

#[derive(Args)]
#[group(multiple = false)]
struct PolytopeView {
    /// Facets, vertices, normalization and fan data (default).
    #[arg(long)]
    info: bool,
    #[arg(long)]
    delzant: bool,
    /// Fano and NEF status with facet Chern numbers.
    #[arg(long)]
    fano: bool,
    #[arg(long)]
    centroid: bool,
    #[arg(long)]
    primitive_pairs: bool,
}

#[derive(Args)]
#[group(multiple = false)]
struct RingView {
    #[arg(long)]
    groebner: bool,
    /// Standard monomials of the quotient.
    #[arg(long)]
    basis: bool,
    #[arg(long)]
    rank: bool,
    #[arg(long, value_name = "EXPR")]
    normal_form: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a manifold file's polytope.
    Polytope {
        file: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        view: PolytopeView,
    },
    /// Inspect the quantum homology ring of a manifold file or preset.
    Ring {
        #[arg(required_unless_present = "preset")]
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        preset: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
        /// `nef:CITATION` to accept a non-Fano NEF polytope.
        #[arg(long = "override", value_name = "nef:CITATION")]
        nef: Option<String>,
        #[command(flatten)]
        view: RingView,
        /// Series window for displaying normal-form coefficients.
        #[arg(long, value_name = "W", value_parser = parse_window)]
        precision: Option<Rational>,
    },
    /// Seidel element of a facet circle action.
    Seidel {
        file: PathBuf,
        /// Facet number, starting at 1.
        #[arg(long)]
        facet: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "override", value_name = "nef:CITATION")]
        nef: Option<String>,
    },
    /// Run a kernel scenario file.
    Kernel {
        file: PathBuf,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Re-derive the claims of a bundled scenario.
    Reproduce {
        #[arg(value_parser = SCENARIOS)]
        scenario: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        bound: Option<u64>,
    },
}

fn parse_param(s: &str) -> Result<(String, Rational), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=P/Q, got `{s}`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("empty parameter name in `{s}`"));
    }
    let value = parse_rational(value).ok_or_else(|| format!("`{value}` is not a rational"))?;
    Ok((name.to_string(), value))
}

fn parse_window(s: &str) -> Result<Rational, String> {
    match parse_rational(s) {
        Some(w) if w >= Rational::from_integer(0.into()) => Ok(w),
        _ => Err(format!("`{s}` is not a nonnegative rational")),
    }
}

pub fn parse_param_value(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Invalid(format!("`{s}` is not a rational")))
}

pub fn parse_override(s: &str) -> Result<NefOverride, CliError> {
    match s.split_once(':') {
        Some(("nef", citation)) if !citation.trim().is_empty() => {
            Ok(NefOverride::new(citation.trim()))
        }
        _ => Err(CliError::Invalid(format!(
            "override must look like nef:CITATION, got `{s}`"
        ))),
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn collect_params(args: ParamArgs) -> Result<Params, CliError> {
    let mut out = Params::new();
    for (k, v) in args.params {
        if out.insert(k.clone(), v).is_some() {
            return Err(CliError::DuplicateParam(k));
        }
    }
    Ok(out)
}

/// Rendered result of one command.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    /// False when a checked claim failed.
    pub passed: bool,
}

fn dispatch(cli: Cli) -> Result<Output, CliError> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Polytope { file, params, view } => {
            let m = ring::load_manifold(&file, &collect_params(params)?)?;
            let view = if view.delzant {
                commands::PolytopeQuery::Delzant
            } else if view.fano {
                commands::PolytopeQuery::Fano
            } else if view.centroid {
                commands::PolytopeQuery::Centroid
            } else if view.primitive_pairs {
                commands::PolytopeQuery::PrimitivePairs
            } else {
                commands::PolytopeQuery::Info
            };
            commands::polytope(&m, view)
        }
        Command::Ring {
            file,
            preset,
            params,
            nef,
            view,
            precision,
        } => {
            let nef = nef.as_deref().map(parse_override).transpose()?;
            let ring = ring::load_ring(
                file.as_deref(),
                preset.as_deref(),
                &collect_params(params)?,
                nef,
            )?;
            let query = if view.groebner {
                commands::RingQuery::Groebner
            } else if view.basis {
                commands::RingQuery::Basis
            } else if view.rank {
                commands::RingQuery::Rank
            } else if let Some(e) = view.normal_form {
                commands::RingQuery::NormalForm(e)
            } else {
                commands::RingQuery::Presentation
            };
            commands::ring(&ring, query, precision.as_ref())
        }
        Command::Seidel {
            file,
            facet,
            params,
            nef,
        } => {
            let nef = nef.as_deref().map(parse_override).transpose()?;
            let m = ring::load_manifold(&file, &collect_params(params)?)?;
            commands::seidel(&m, facet, nef.as_ref())
        }
        Command::Kernel { file, bound } => {
            Ok(commands::report(&kernel::run_kernel(&file, bound, exec)?))
        }
        Command::Reproduce {
            scenario,
            params,
            bound,
        } => {
            let options = toric_seidel::seidel::ScenarioOptions {
                bound,
                execution: exec,
            };
            let r =
                toric_seidel::seidel::run_scenario(&scenario, &collect_params(params)?, &options)?;
            Ok(commands::report(&r))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 on success, 1 when a claim fails, 2 on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok(o) => {
            let body = if json {
                serde_json::to_string_pretty(&o.json).expect("output serializes")
            } else {
                o.text.trim_end().to_string()
            };
            let _ = writeln!(out, "{body}");
            if o.passed {
                EXIT_OK
            } else {
                EXIT_FAILED_CLAIMS
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
