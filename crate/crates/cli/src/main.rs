//! `acybe`: verify, build and convert solutions of the A-classical
//! Yang-Baxter equation from the command line.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage or input errors.

mod commands;
mod demo;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acybe::cybe::Equation;
use acybe::dnalg::DegreeWindow;
use acybe::json::{parse_document, to_canonical_string};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "acybe",
    version,
    about = "Exact checks for the A-classical Yang-Baxter equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Total degree through which equations are verified.
    #[arg(long, global = true, default_value_t = 6)]
    order: u32,

    /// Degree window `v,N` (brackets optional), e.g. `--window=-4,4`.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<DegreeWindow>,

    #[arg(long, global = true, value_enum, default_value_t = EquationArg::Cybe)]
    equation: EquationArg,

    /// Which standard form to build (build-stolin accepts rational and quasi-rational).
    #[arg(long, global = true, value_enum)]
    kind: Option<Kind>,

    /// Write the produced artifact (or the report, if there is none) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute γ for an algebra (name like `matrix:2` or a JSON file) and check its invariance.
    Gamma { algebra: String },
    /// Verify a solution JSON against the CYBE or GCYBE.
    Verify { solution: PathBuf },
    /// Build a solution from a Stolin pair.
    BuildStolin { pair: PathBuf },
    /// Convert between a solution and its W-basis.
    Convert { input: PathBuf },
    /// Build and check the classical double of a finite bialgebra.
    Double { bialgebra: PathBuf },
    /// Check the cocycle identities of δ_r (solution input) or of a finite bialgebra.
    CocycleCheck { input: PathBuf },
    /// Check the Manin triple (D_n(A), A[[z]], A(r)) and the cobracket it determines.
    ManinCheck { solution: PathBuf },
    /// Run the bundled M_2 examples end to end.
    Demo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EquationArg {
    Cybe,
    Gcybe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Rational,
    QuasiRational,
    QuasiTrig,
    Trig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_window(s: &str) -> Result<DegreeWindow, String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected `v,N`, got {s:?}"))?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad lower degree {a:?}"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("bad upper degree {b:?}"))?;
    if lo > hi {
        return Err(format!("empty window [{lo},{hi}]"));
    }
    Ok(DegreeWindow::new(lo, hi))
}

/// Flags shared by all subcommands, after validation.
#[derive(Clone, Copy, Debug)]
pub struct Opts {
    pub order: u32,
    pub window: Option<DegreeWindow>,
    pub equation: Equation,
    pub kind: Option<Kind>,
}

impl Default for Opts {
    fn default() -> Self {
        Opts {
            order: 6,
            window: None,
            equation: Equation::Cybe,
            kind: None,
        }
    }
}

/// What a subcommand produced.
pub struct Report {
    pub ok: bool,
    pub json: Value,
    pub text: String,
    /// Written to `--out` when present.
    pub artifact: Option<Value>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: acybe::Error,
    },
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub trait Context<T> {
    fn context(self, what: impl Into<String>) -> Result<T, CliError>;
}

impl<T> Context<T> for acybe::Result<T> {
    fn context(self, what: impl Into<String>) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core {
            context: what.into(),
            source,
        })
    }
}

fn load(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_document(&text, "$").context(path.display().to_string())
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = Opts {
        order: cli.order,
        window: cli.window,
        equation: match cli.equation {
            EquationArg::Cybe => Equation::Cybe,
            EquationArg::Gcybe => Equation::Gcybe,
        },
        kind: cli.kind,
    };
    if cli.kind.is_some() && !matches!(cli.command, Command::BuildStolin { .. }) {
        return Err(CliError::Usage("--kind only applies to build-stolin".into()));
    }
    match &cli.command {
        Command::Gamma { algebra } => {
            let path = Path::new(algebra);
            let v = if path.is_file() {
                load(path)?
            } else {
                Value::String(algebra.clone())
            };
            commands::gamma(&v)
        }
        Command::Verify { solution } => commands::verify(&load(solution)?, &opts),
        Command::BuildStolin { pair } => commands::build_stolin(&load(pair)?, &opts),
        Command::Convert { input } => commands::convert(&load(input)?, &opts),
        Command::Double { bialgebra } => commands::double(&load(bialgebra)?),
        Command::CocycleCheck { input } => commands::cocycle_check(&load(input)?, &opts),
        Command::ManinCheck { solution } => commands::manin_check(&load(solution)?, &opts),
        Command::Demo => demo::run(&opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Json => print!("{}", to_canonical_string(&report.json)),
        Format::Text => println!("{}", report.text.trim_end()),
    }
    if let Some(out) = &cli.out {
        let doc = report.artifact.as_ref().unwrap_or(&report.json);
        if let Err(source) = fs::write(out, to_canonical_string(doc)) {
            eprintln!(
                "error: {}",
                CliError::Io {
                    path: out.clone(),
                    source
                }
            );
            return ExitCode::from(2);
        }
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_syntax() {
        assert_eq!(parse_window("-4,4").unwrap(), DegreeWindow::new(-4, 4));
        assert_eq!(parse_window("[ -2, 3 ]").unwrap(), DegreeWindow::new(-2, 3));
        assert!(parse_window("3,1").is_err());
        assert!(parse_window("3").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
