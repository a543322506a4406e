mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

/// First line of a clap error, with the offending flag appended when the
/// first line does not already name it.
fn one_line(err: &clap::Error) -> String {
    let rendered = err.render().to_string();
    let first = rendered.lines().next().unwrap_or("error").trim().to_string();
    let flags: Vec<String> = match err.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => vec![s.clone()],
        Some(ContextValue::Strings(v)) => v.clone(),
        _ => Vec::new(),
    };
    let missing: Vec<&String> = flags.iter().filter(|f| !first.contains(f.as_str())).collect();
    if missing.is_empty() {
        first
    } else {
        let names: Vec<&str> = missing.iter().map(|s| s.as_str()).collect();
        format!("{} {}", first.trim_end_matches(':'), names.join(", "))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Density(a) => commands::density(a),
        Command::Cf(a) => commands::cf(a),
        Command::Pmf(a) => commands::pmf(a),
        Command::Moments(a) => commands::moments(a),
        Command::Verify(a) => commands::verify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = err.print();
                return ExitCode::SUCCESS;
            }
            if err.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = err.print();
                return ExitCode::from(1);
            }
            eprintln!("{}", one_line(&err));
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(failed)) => {
            eprintln!("error: {failed} verification check(s) failed");
            ExitCode::from(2)
        }
    }
}
