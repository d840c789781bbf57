mod args;
mod commands;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit statuses shared by every subcommand.
pub mod status {
    pub const OK: u8 = 0;
    pub const VIOLATED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RESOURCE: u8 = 3;
}

/// A bad invocation that clap cannot catch on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    use skewsd::Error as E;
    if let Some(e) = err.downcast_ref::<E>() {
        return match e {
            E::PreconditionViolation { .. }
            | E::LemmaViolation { .. }
            | E::ProofHypothesis(_)
            | E::PlaneAxiom(_)
            | E::Internal(_) => status::VIOLATED,
            E::SizeLimit { .. } | E::WidthLimit { .. } | E::SpaceTooSmall { .. } => {
                status::RESOURCE
            }
            _ => status::USAGE,
        };
    }
    status::USAGE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                status::USAGE
            } else {
                status::OK
            });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
