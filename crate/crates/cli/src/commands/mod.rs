use std::io::Write;

use frechet::diagnostics::Suite;
use thiserror::Error;

use crate::cli::{Cli, Command};

mod check;
mod estimate;
mod moments;
mod sample;
mod tables;

pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
/// Check failures exit with this plus the suite index.
pub const EXIT_CHECK_BASE: i32 = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] frechet::Error),

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),

    #[error("{} check failed", .0.name())]
    Check(Suite),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_input_error() => EXIT_INPUT,
            CliError::Core(_) => EXIT_DOMAIN,
            CliError::Output(_) => EXIT_INPUT,
            CliError::Check(suite) => EXIT_CHECK_BASE + suite.index() as i32,
        }
    }
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Moments(args) => moments::run(&args, cli.format, out),
        Command::Estimate(args) => estimate::run(&args, cli.format, out),
        Command::Sample(args) => sample::run(&args, cli.format, out),
        Command::Tables => tables::run(cli.format, out),
        Command::Check(args) => check::run(&args, cli.format, out),
    }
}
