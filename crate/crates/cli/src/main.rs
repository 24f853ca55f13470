use clap::Parser;

use rankhull_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let verbose = cli.verbose;
    match run(&cli) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string(&report).expect("reports serialize")
            );
            if verbose {
                eprintln!("command: {}", report.command);
                for check in &report.checks {
                    eprintln!(
                        "  check {}: {} ({})",
                        check.name,
                        if check.pass { "pass" } else { "FAIL" },
                        check.detail
                    );
                }
            }
            if let Some(fail) = report.first_failure() {
                eprintln!("check failed: {} ({})", fail.name, fail.detail);
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
