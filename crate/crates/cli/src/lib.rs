//! Command-line front end for the `shl` library.
//!
//! Exit codes:
//!
//! | code | meaning                                  |
//! |------|------------------------------------------|
//! | 0    | success                                  |
//! | 1    | file could not be read or written        |
//! | 2    | bad command line                         |
//! | 3    | parse error (file or form literal)       |
//! | 4    | d² ≠ 0                                   |
//! | 5    | ω degenerate                             |
//! | 6    | ω not closed                             |
//! | 7    | bad group block                          |
//! | 8    | bad foliation block                      |
//! | 9    | form not closed                          |
//! | 10   | Lefschetz hypothesis violated            |
//! | 11   | internal consistency failure             |
//! | 12   | unknown catalog fixture                  |

pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use shl::error::ErrorClass;
use shl::exterior::Form;
use shl::invariant::DEFAULT_MAX_GROUP;
use shl::lefschetz::harmonize;
use shl::model::{catalog, Model};
use shl::ShlError;

#[derive(Debug, Parser)]
#[command(name = "shl", version, about = "Symplectic harmonic representability on Lie algebra models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and check a model file.
    Validate { file: PathBuf },
    /// Cohomology, Lefschetz maps and harmonic representability.
    Report {
        file: PathBuf,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Text output (the default).
        #[arg(long)]
        text: bool,
        /// Also analyze the group-invariant complex.
        #[arg(long)]
        invariant: bool,
        /// Also run the foliated checks.
        #[arg(long)]
        foliated: bool,
    },
    /// Replace a closed form by a cohomologous harmonic one.
    Harmonize {
        file: PathBuf,
        #[arg(long)]
        form: String,
    },
    /// Built-in fixture models.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Emit { name: String },
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Usage(String),
    Shl(ShlError),
}

impl From<ShlError> for CliError {
    fn from(e: ShlError) -> Self { CliError::Shl(e) }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(s) => write!(f, "io error: {s}"),
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Shl(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Shl(e) => match e.class() {
                ErrorClass::Parse => 3,
                ErrorClass::Jacobi => 4,
                ErrorClass::OmegaDegenerate => 5,
                ErrorClass::OmegaNotClosed => 6,
                ErrorClass::Group => 7,
                ErrorClass::Foliation => 8,
                ErrorClass::NotClosed => 9,
                ErrorClass::Hypothesis => 10,
                ErrorClass::Internal => 11,
                ErrorClass::UnknownFixture => 12,
            },
        }
    }
}

/// Group-closure bound, from `SHL_MAX_GROUP` when set.
pub fn max_group() -> Result<usize, CliError> {
    match std::env::var("SHL_MAX_GROUP") {
        Err(_) => Ok(DEFAULT_MAX_GROUP),
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("SHL_MAX_GROUP must be a positive integer, got '{s}'"))),
    }
}

pub fn load(path: &Path) -> Result<Model, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(Model::from_json(&text)?)
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(cli, out)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match cli.command {
        Command::Validate { file } => {
            let model = load(&file)?;
            model.check(max_group()?)?;
            writeln!(out, "OK: {} (dim {})", model.name, model.dim()).map_err(io)?;
        }
        Command::Report { file, json, text: _, invariant, foliated } => {
            let model = load(&file)?;
            let r = report::build(&model, invariant, foliated, max_group()?)?;
            let body = if json { report::render_json(&r) } else { report::render_text(&r) };
            out.write_all(body.as_bytes()).map_err(io)?;
        }
        Command::Harmonize { file, form } => {
            let model = load(&file)?;
            model.check(max_group()?)?;
            let sc = model.primary_complex()?;
            let xi = Form::parse(model.dim(), &form)?;
            let bar = harmonize(&sc, &xi)?;
            let d = sc.differential(&bar);
            let delta = sc.codifferential(&bar)?;
            let diff = sc.complex().cohomology(xi.degree()).class_coords(&(&xi - &bar))?;
            if !d.is_zero() || !delta.is_zero() || diff.iter().any(|c| !num_is_zero(c)) {
                return Err(ShlError::IdentityViolated("harmonize certificate failed".into()).into());
            }
            writeln!(out, "input:  {xi}").map_err(io)?;
            writeln!(out, "output: {bar}").map_err(io)?;
            writeln!(out, "d(output) = {d}").map_err(io)?;
            writeln!(out, "delta(output) = {delta}").map_err(io)?;
            writeln!(out, "[output] - [input] = 0").map_err(io)?;
        }
        Command::Catalog { action: CatalogAction::List } => {
            for name in catalog::NAMES {
                writeln!(out, "{name}").map_err(io)?;
            }
        }
        Command::Catalog { action: CatalogAction::Emit { name } } => {
            out.write_all(catalog::text(&name)?.as_bytes()).map_err(io)?;
        }
    }
    Ok(())
}

fn num_is_zero(c: &shl::scalar::Scalar) -> bool { c == &shl::scalar::zero() }
