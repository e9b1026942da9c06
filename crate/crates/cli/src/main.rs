use std::io::{self, Write};
use std::process;

use clap::Parser;

mod cli;
mod commands;
mod output;

use cli::Cli;

fn main() {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = commands::run(cli, &mut out);
    let flushed = out.flush();
    if let Err(e) = result {
        eprintln!("error: {e}");
        process::exit(e.exit_code());
    }
    if let Err(e) = flushed {
        eprintln!("error: writing output: {e}");
        process::exit(commands::EXIT_INPUT);
    }
}
