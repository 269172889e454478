use std::process::ExitCode;

use shrinkerlab_cli::{error_json, run_args, usage, CliError};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    if argv.is_empty() || argv.iter().any(|a| a == "--help" || a == "-h") {
        eprint!("{}", usage());
        return if argv.is_empty() { ExitCode::from(2) } else { ExitCode::SUCCESS };
    }
    match run_args(&argv) {
        Ok(bundle) => {
            for p in bundle.csv_paths.iter().chain(&bundle.svg_paths) {
                println!("{}", p.display());
            }
            println!("{}", bundle.json_summary.display());
            if !bundle.summary.all_checks_pass {
                eprintln!("note: some checks failed, see {}", bundle.json_summary.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            if matches!(e, CliError::Usage(_)) {
                eprint!("{}", usage());
            }
            ExitCode::from(if matches!(e, CliError::Computation { .. } | CliError::Io(_)) { 1 } else { 2 })
        }
    }
}
