use std::path::PathBuf;
use std::process::ExitCode;

use bernoulli_lab::commands::{cmd_plot, cmd_solve, cmd_verify, EXIT_ERROR, EXIT_NOT_CONVERGED, EXIT_OK};
use bernoulli_lab::report::summary_table;
use bernoulli_lab::suite::all_passed;
use clap::{Parser, Subcommand};

/// Anisotropic Bernoulli free boundary laboratory.
///
/// Exit codes: 0 success, 1 usage or configuration error (or a failed check),
/// 2 free boundary iteration did not converge.
#[derive(Parser)]
#[command(name = "bernoulli", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the configured problem and write a solution bundle.
    Solve {
        /// Experiment configuration (TOML).
        config: PathBuf,
        /// Bundle directory; overrides `output` in the configuration.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite and print a summary table.
    Verify {
        /// Configuration with a `[suite]` table; the default suite when omitted.
        suite: Option<PathBuf>,
        /// Run only the named check (repeatable).
        #[arg(long)]
        only: Vec<String>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Directory for reports and artifacts; overrides `output`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render plot.svg for a bundle or a staged run directory.
    Plot {
        bundle: PathBuf,
        /// Directory for plot.svg; the bundle directory by default.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    let code = match cli.command {
        Command::Solve { config, out } => match cmd_solve(&config, out.as_deref()) {
            Ok(o) => {
                let state = if o.converged { "converged" } else { "did not converge" };
                println!(
                    "{state} after {} iterations, max residual {:.3e}; bundle in {}",
                    o.iterations,
                    o.max_residual,
                    o.out.display()
                );
                if o.converged {
                    EXIT_OK
                } else {
                    EXIT_NOT_CONVERGED
                }
            }
            Err(e) => fail(e),
        },
        Command::Verify { suite, only, jobs, out } => match cmd_verify(suite.as_deref(), &only, jobs, out.as_deref()) {
            Ok(reports) => {
                print!("{}", summary_table(&reports));
                if all_passed(&reports) {
                    EXIT_OK
                } else {
                    EXIT_ERROR
                }
            }
            Err(e) => fail(e),
        },
        Command::Plot { bundle, out } => match cmd_plot(&bundle, out.as_deref()) {
            Ok(path) => {
                println!("{}", path.display());
                EXIT_OK
            }
            Err(e) => fail(e),
        },
    };
    ExitCode::from(code)
}

fn fail(e: bernoulli_lab::LabError) -> u8 {
    eprintln!("error: {e}");
    EXIT_ERROR
}
