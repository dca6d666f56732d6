use std::io::Write;

use clap::Parser;
use qc2_cli::{run, Cli};

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let outcome = run(&cli, &argv);
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports are valid JSON");
    // A closed stdout (e.g. `| head`) is not an error of the computation.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if !cli.global.quiet {
        eprintln!("{}", outcome.summary);
    }
    std::process::exit(outcome.exit);
}
