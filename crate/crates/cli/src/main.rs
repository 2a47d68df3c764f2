use clap::{Parser, Subcommand, ValueEnum};
use holojac_cli::{emit_examples, list_checks, run_check_timed, CheckRequest, OutputFormat};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "holojac", version, about = "Exact checks for Jacobi, Poisson, holomorphic and generalized structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check over structure files (exit 0 pass, 1 fail, 2 error).
    Check {
        name: String,
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print per-subject wall time to stderr.
        #[arg(long)]
        timing: bool,
    },
    /// Write the example gallery into a directory.
    Examples { dir: PathBuf },
    /// List the registered checks.
    ListChecks,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::ListChecks => {
            print!("{}", list_checks());
            ExitCode::SUCCESS
        }
        Command::Examples { dir } => match emit_examples(&dir) {
            Ok(files) => {
                for f in files {
                    println!("{}", f.display());
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        },
        Command::Check { name, files, format, seed, timing } => {
            let format = match format {
                Format::Text => OutputFormat::Text,
                Format::Json => OutputFormat::Json,
            };
            let req = CheckRequest { check: name, inputs: files, format, seed };
            match run_check_timed(&req) {
                Ok((report, times)) => {
                    match req.format {
                        OutputFormat::Text => print!("{}", report.to_text()),
                        OutputFormat::Json => print!("{}", report.to_json_text()),
                    }
                    if timing {
                        for (o, t) in report.outcomes.iter().zip(times) {
                            eprintln!("{}: {:.3}s", o.subject, t.as_secs_f64());
                        }
                    }
                    if report.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
