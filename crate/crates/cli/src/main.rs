//! `genusrep` command-line front end.
//!
//! Exit codes: 0 ok, 1 parse or schema error, 2 parameter out of range,
//! 3 construction constraint failed, 4 verification failed, 5 empty geometry.

mod args;
mod commands;
mod mesh_io;
mod sweep;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(exit::USAGE, message)
    }

    pub fn io(context: &str, e: std::io::Error) -> Self {
        Self::new(exit::USAGE, format!("{context}: {e}"))
    }
}

pub mod exit {
    pub const USAGE: u8 = 1;
    pub const RANGE: u8 = 2;
    pub const CONSTRAINT: u8 = 3;
    pub const VERIFY: u8 = 4;
    pub const EMPTY: u8 = 5;
}

/// Exit code for a library error.
pub fn exit_code(e: &genusrep::Error) -> u8 {
    use genusrep::Error as E;
    match e {
        E::InvalidGenus(_)
        | E::AlphaOutOfRange { .. }
        | E::InvalidParameter(_)
        | E::IncompatibleParams(_) => exit::RANGE,
        E::Constraint(_)
        | E::Existence(_)
        | E::Domain(_)
        | E::NonConvergence(_)
        | E::InvalidBracket { .. } => exit::CONSTRAINT,
        _ => exit::USAGE,
    }
}

impl From<genusrep::Error> for Failure {
    fn from(e: genusrep::Error) -> Self {
        Self::new(exit_code(&e), e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Validate(a) => commands::validate(&a),
        Command::Construct(a) => commands::construct(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::GraphCheck(a) => commands::graph_check(&a),
        Command::Sweep(a) => sweep::run(&a),
        Command::Levelset(a) => commands::levelset(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
