use std::process::ExitCode;

use clap::Parser;
use galegap_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli, &mut std::io::stdout().lock())
}
