use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lformal_cli::commands::{self, builtin, BUILTIN_NAMES};
use lformal_cli::{AlgebraDocument, CliError, Report};

/// Exit codes: 0 success, 1 FAIL, 2 usage error, 3 NON-FORMAL, 4 unreadable
/// or invalid input.
#[derive(Parser)]
#[command(name = "lformal", version, about = "Exact homotopy transfer, Massey products and formality witnesses")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check the DG-Lie axioms and the pairing.
    Validate { file: PathBuf },
    /// Cohomology dimensions, representatives and the induced bracket.
    Cohomology { file: PathBuf },
    /// Transferred minimal model, re-verified.
    Transfer {
        file: PathBuf,
        /// Highest arity computed (default dim H + 2, at most 6).
        #[arg(long)]
        arity: Option<usize>,
    },
    /// One triple Massey product, or a scan for a nonzero one.
    Massey {
        file: PathBuf,
        #[arg(long, num_args = 3, value_names = ["L1", "L2", "L3"])]
        triple: Option<Vec<String>>,
    },
    /// Non-formality certificate or formality witness.
    Formality {
        file: PathBuf,
        /// Highest arity computed (default dim H + 2, at most 6).
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Golden suite over the bundled documents.
    Corpus,
    /// Print a built-in instance as a normalized document.
    Export {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES))]
        name: String,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LF_THREADS") else { return Ok(()) };
    let n: usize =
        raw.trim().parse().map_err(|_| CliError::Usage(format!("LF_THREADS must be a count, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<Option<Report>, CliError> {
    configure_threads()?;
    let report = match &cli.command {
        Command::Validate { file } => commands::cmd_validate(&commands::read_document(file)?)?,
        Command::Cohomology { file } => commands::cmd_cohomology(&commands::read_document(file)?)?,
        Command::Transfer { file, arity } => commands::cmd_transfer(&commands::read_document(file)?, *arity)?,
        Command::Massey { file, triple } => commands::cmd_massey(&commands::read_document(file)?, triple.as_deref())?,
        Command::Formality { file, arity } => commands::cmd_formality(&commands::read_document(file)?, *arity)?,
        Command::Corpus => commands::cmd_corpus()?,
        Command::Export { name } => {
            let inst = builtin(name).expect("validated by clap");
            print!("{}", AlgebraDocument::from_instance(&inst).to_toml());
            return Ok(None);
        }
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(report)) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Structured => println!("{}", report.to_json()),
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(4)
        }
    }
}
