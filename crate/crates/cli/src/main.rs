//! `sodual`: batch computations and checks from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 for usage or
//! domain errors, 3 for precision or resource errors.

mod commands;
mod output;

use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    ExitCode::from(commands::run(std::env::args_os()) as u8)
}
