use std::io::Write;

use clap::Parser;
use rhs_quad::cli::{run, Cli};

fn main() {
    let out = run(&Cli::parse());
    // a closed pipe is not an error worth reporting
    if !out.stdout.is_empty() {
        let _ = writeln!(std::io::stdout(), "{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", out.stderr);
    }
    std::process::exit(out.code);
}
