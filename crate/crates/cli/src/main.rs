//! `penner`: certified dilatations, Coxeter spectra, filled genera and the
//! minimal-dilatation search from the command line.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use penner_core::{Error, SearchMode, DEFAULT_TOL};

#[derive(Parser)]
#[command(
    name = "penner",
    version,
    about = "Dilatations of Penner-type mapping classes"
)]
struct Cli {
    /// Target width of certified root intervals.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Emit JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified dilatation of the mapping class given by a pattern and a twist word.
    Dilatation {
        /// Pattern document (TOML).
        file: PathBuf,
        /// Twist word such as "a1+ b1-"; defaults to the document's word, then the bipartite word.
        #[arg(long)]
        word: Option<String>,
    },
    /// Spectra of a mixed-sign Coxeter transformation and its homological action.
    Coxeter {
        #[command(flatten)]
        graph: GraphArgs,
        /// "bipartite", "identity" (1, 2, ..., n) or a 1-based list such as "1,3,2,4".
        #[arg(long, default_value = "bipartite")]
        order: String,
    },
    /// Genus filled by a pattern, or a bound and the per-framing distribution.
    Genus {
        #[command(flatten)]
        graph: GraphArgs,
        /// Count the framings filling each genus.
        #[arg(long)]
        distribution: bool,
    },
    /// Smallest dilatation from Penner's construction on the closed surface of a genus.
    Minimize {
        #[arg(long)]
        genus: u32,
        /// "closed-form" or "certified".
        #[arg(long, default_value = "certified")]
        mode: String,
    },
    /// Filled genus and dilatation of A_6, A_8, E_6, E_7, E_8 and the enriched 6-cycle.
    Table1,
    /// Closed-form values for genus 1..=G and their gaps to 3 + 2 sqrt 2, as CSV.
    Limits {
        #[arg(long)]
        gmax: u32,
    },
}

/// A graph or pattern from a document or a named family.
#[derive(Args)]
struct GraphArgs {
    /// Document with a [graph] or [pattern] section.
    file: Option<PathBuf>,
    /// A, D, E6, E7, E8, affine-D, affine-E6..8, cycle or enriched.
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
    /// Size parameter of the family.
    #[arg(long)]
    n: Option<usize>,
    /// "alternating", "plus" or a list of 1/-1 per vertex.
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, message: String },
    Usage(String),
    Word(Vec<String>),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                Error::NotNonnegative { .. } => "not_nonnegative",
                Error::NoRealRoot => "no_real_root",
                Error::NoRealSolution(_) => "no_real_solution",
                Error::NotBipartite => "not_bipartite",
                Error::NotAffine => "not_affine",
                Error::InvalidParameter(_) => "invalid_parameter",
                Error::IndexOutOfRange { .. } => "index_out_of_range",
                Error::InvalidWord(_) => "invalid_word",
                Error::TooLarge { .. } => "too_large",
                Error::InvalidMap(_) => "invalid_map",
                Error::UnclassifiedSurvivor(_) => "unclassified_survivor",
                Error::InvalidGenus(_) => "invalid_genus",
                Error::Document(_) => "document",
            },
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::Word(_) => "invalid_word",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io { path, message } => format!("{}: {message}", path.display()),
            CliError::Usage(m) => m.clone(),
            CliError::Word(problems) => format!("invalid twist word: {}", problems.join("; ")),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::UnclassifiedSurvivor(_)) => 3,
            _ => 2,
        }
    }
}

fn run(cli: Cli) -> Result<commands::Report, CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    match cli.command {
        Command::Dilatation { file, word } => commands::dilatation(&file, word.as_deref(), cli.tol),
        Command::Coxeter { graph, order } => commands::coxeter(&graph.into(), &order, cli.tol),
        Command::Genus {
            graph,
            distribution,
        } => commands::genus(&graph.into(), distribution),
        Command::Minimize { genus, mode } => {
            let mode: SearchMode = mode.parse()?;
            commands::minimize(genus, mode, cli.tol)
        }
        Command::Table1 => commands::table1(cli.tol),
        Command::Limits { gmax } => commands::limits(gmax),
    }
}

impl From<GraphArgs> for commands::Source {
    fn from(a: GraphArgs) -> Self {
        commands::Source {
            file: a.file,
            family: a.family,
            n: a.n,
            signs: a.signs,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("report serialises")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                let body = serde_json::json!({ "error": e.kind(), "message": e.message() });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&body).expect("error serialises")
                );
            }
            eprintln!("error[{}]: {}", e.kind(), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
