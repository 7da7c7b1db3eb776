use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracpx::Strategy;
use fracpx_cli::{execute, Command, Invocation};

/// Fractional p(x)-Laplacian toolkit.
///
/// Every flag can also be set through the environment variable named in its
/// help text (FRACPX_CONFIG, FRACPX_OUT, FRACPX_SEED, FRACPX_STRATEGY).
/// Exit status: 0 success, 2 no convergence, 3 invalid input, 1 other failures.
#[derive(Parser)]
#[command(name = "fracpx", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// TOML config file, or a manifest.json from an earlier run
    #[arg(long, global = true, env = "FRACPX_CONFIG")]
    config: Option<PathBuf>,

    /// Output directory
    #[arg(long, global = true, env = "FRACPX_OUT", default_value = "fracpx-out")]
    out: PathBuf,

    /// Random seed (overrides the config)
    #[arg(long, global = true, env = "FRACPX_SEED")]
    seed: Option<u64>,

    /// Solver strategy: minimize, picard or continuation (overrides the config)
    #[arg(long, global = true, env = "FRACPX_STRATEGY")]
    strategy: Option<Strategy>,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// Solve the problem at the configured lambda
    Solve,
    /// Solve over a range of lambda values
    Sweep,
    /// Run the randomized property suites
    Verify,
    /// Norms and norm-modular checks of the configured test function
    Norms,
    /// Brouwer degree of a preset map, or the homotopy check
    Degree,
    /// Solve by homotopy continuation from t = 0 to t = 1
    Continuation,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let command = match cli.command {
        Sub::Solve => Command::Solve,
        Sub::Sweep => Command::Sweep,
        Sub::Verify => Command::Verify,
        Sub::Norms => Command::Norms,
        Sub::Degree => Command::Degree,
        Sub::Continuation => Command::Continuation,
    };
    let summary = execute(&Invocation {
        command,
        config: cli.config,
        out: cli.out,
        seed: cli.seed,
        strategy: cli.strategy,
    });
    if summary.exit_code == 0 {
        println!("{}", summary.message);
    } else {
        eprintln!("error: {}", summary.message);
    }
    ExitCode::from(summary.exit_code as u8)
}
