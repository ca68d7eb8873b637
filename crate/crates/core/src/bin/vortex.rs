use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vortex_core::numeric::convergence_report;
use vortex_core::scenario::{self, Scenario};
use vortex_core::Error;

/// Vortex transfer in coherently prepared atomic media.
#[derive(Parser)]
#[command(name = "vortex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its artifacts.
    Run {
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Fail with exit code 3 when a validity guard trips.
        #[arg(long)]
        strict: bool,
    },
    /// Run the built-in scenarios of a figure (fig2, fig4, fig6, fig7, fig8).
    Reproduce {
        figure: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the RK4 convergence table of a scenario as CSV.
    Convergence { scenario: PathBuf },
}

fn configure_threads() -> Result<(), Error> {
    let Ok(value) = std::env::var("VORTEX_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::InvalidConfig(format!("VORTEX_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::InvalidConfig(e.to_string()))
}

fn execute(command: Command) -> Result<(), Error> {
    configure_threads()?;
    match command {
        Command::Run { scenario, out, strict } => {
            let s = Scenario::load(&scenario)?;
            let output = scenario::run(&s, &out, strict)?;
            for flag in &output.validity.flags {
                eprintln!("warning: {flag}");
            }
        }
        Command::Reproduce { figure, out } => {
            for output in scenario::reproduce(&figure, &out)? {
                for flag in &output.validity.flags {
                    eprintln!("warning: {flag}");
                }
            }
        }
        Command::Convergence { scenario } => {
            let s = Scenario::load(&scenario)?;
            let report = convergence_report(&s.config, &s.probe_entrance(), s.convergence_distance())?;
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
