use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hus_cli::error::{EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_PARSE};
use hus_cli::spec::{base_dir, parse_scalar};
use hus_cli::verify::{DEFAULT_DRAWS, DEFAULT_SEED};
use hus_cli::{load, render_report, run_analyze, run_verify, run_witness, AnalyzeOptions, CliError, Format, Theorem, VerifyOptions};
use hus_core::zoo::PaperDiagonal;

#[derive(Parser)]
#[command(name = "hus", version, about = "Hyers-Ulam stability analysis of operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability report for an operator spec.
    Analyze {
        spec: PathBuf,
        #[arg(long, default_value = "human")]
        format: Format,
        /// Truncation sizes for the convergence table of a diagonal.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long)]
        rank_tol: Option<f64>,
    },
    /// Run a theorem's property suite on seeded draws or on given specs.
    Verify {
        theorem: String,
        #[arg(long = "spec")]
        specs: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DRAWS)]
        draws: usize,
        #[arg(long, default_value = "human")]
        format: Format,
    },
    /// Named operators available as `kind: zoo` specs.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
    /// Nearest kernel vector to `x` and the stability inequality there.
    Witness {
        spec: PathBuf,
        /// Comma-separated scalars, e.g. "1,2-0.5i,3".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "human")]
        format: Format,
        #[arg(long)]
        rank_tol: Option<f64>,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    List,
}

fn zoo_listing() -> String {
    let mut out = String::new();
    for d in PaperDiagonal::ALL {
        out.push_str(&format!("{:<22}diagonal\n", d.name()));
    }
    for (name, params) in [("bernstein", "matrix    n, nodes"), ("szasz", "szasz     n, N"), ("multiplication", "matrix    phi, dim")] {
        out.push_str(&format!("{name:<22}{params}\n"));
    }
    out
}

/// Rendered output and exit status.
fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Command::Analyze { spec, format, dims, rank_tol } => {
            let file = load(&spec)?;
            let report = run_analyze(&file, &base_dir(&spec), &AnalyzeOptions { dims, rank_tol })?;
            Ok((render_report(&report, format), EXIT_OK))
        }
        Command::Verify { theorem, specs, seed, draws, format } => {
            let theorem: Theorem = theorem.parse()?;
            let specs = specs.iter().map(|p| Ok((load(p)?, base_dir(p)))).collect::<Result<Vec<_>, CliError>>()?;
            let report = run_verify(theorem, &specs, &VerifyOptions { seed, draws })?;
            let code = if report.failed { EXIT_COUNTEREXAMPLE } else { EXIT_OK };
            Ok((render_report(&report, format), code))
        }
        Command::Zoo { action: ZooAction::List } => Ok((zoo_listing(), EXIT_OK)),
        Command::Witness { spec, x, format, rank_tol } => {
            let x = x
                .split(',')
                .map(|v| parse_scalar(v).map_err(|m| CliError::Usage(format!("--x: {m}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let file = load(&spec)?;
            let report = run_witness(&file, &base_dir(&spec), &x, rank_tol)?;
            Ok((render_report(&report, format), EXIT_OK))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
