//! Command-line front end: parameter sweeps emitted as CSV (optionally
//! SVG), plus the verification suite.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::time::Instant;

use clap::Parser;

pub use commands::{cmd_barrier, cmd_evolve, cmd_free, cmd_well1d, cmd_well2d, CliError};
pub use config::{Cli, CliCommand, Command, CommonArgs, RunConfig};
pub use verify::{run_all, CheckResult};

/// Exit codes: 0 success, 1 verification failure (or runtime error),
/// 2 invalid configuration.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        CliCommand::Well1d(a) => (Command::Well1d, a),
        CliCommand::Well2d(a) => (Command::Well2d, a),
        CliCommand::Barrier(a) => (Command::Barrier, a),
        CliCommand::Free(a) => (Command::Free, a),
        CliCommand::Evolve(a) => (Command::Evolve, a),
        CliCommand::Verify(a) => (Command::Verify, a),
    };
    let config = match RunConfig::resolve(command, args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("invalid config: {e}");
            return 2;
        }
    };

    if command == Command::Verify {
        return run_verify(&config);
    }

    let emitted = match command {
        Command::Well1d => cmd_well1d(&config),
        Command::Well2d => cmd_well2d(&config),
        Command::Barrier => cmd_barrier(&config),
        Command::Free => cmd_free(&config),
        Command::Evolve => cmd_evolve(&config),
        Command::Verify => unreachable!(),
    };
    match emitted {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
            0
        }
        Err(CliError::Config(e)) => {
            eprintln!("invalid config: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run_verify(config: &RunConfig) -> i32 {
    let start = Instant::now();
    let results = run_all(config.quick);
    let mut failures = 0;
    for check in &results {
        println!("{}", check.line());
        if !check.passed {
            failures += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let budget = if config.quick { 30.0 } else { 300.0 };
    let within_budget = elapsed < budget;
    println!(
        "[{}] A10  end-to-end runtime        {elapsed:>7.2}s  budget {budget:.0}s, {}/{} checks passed",
        if within_budget && failures == 0 { "PASS" } else { "FAIL" },
        results.len() - failures,
        results.len()
    );
    if failures == 0 && within_budget {
        0
    } else {
        1
    }
}
