use std::io::Write;
use std::process::ExitCode;

use qweyl::report::{list_checks, run_suite, Status};
use qweyl_cli::{config_from_args, Cli, Command};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let config = match config_from_args(&argv) {
        Ok(Some(c)) => c,
        Ok(None) => {
            print!("{}", list_checks());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // Let clap print help and version itself.
            if let Some(ce) = e.downcast_ref::<clap::Error>() {
                ce.exit();
            }
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    // Re-parse for the output path; config_from_args has validated everything.
    let out = match <Cli as clap::Parser>::parse_from(&argv).command {
        Command::Verify(a) | Command::Monodromy(a) => a.out,
        Command::List => None,
    };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::Skipped => "SKIP",
        };
        let at = c.point.map_or(String::new(), |p| format!("[{p}]"));
        let residual = c.residual.map_or("-".into(), |r| format!("{r:.2e}"));
        eprintln!("{status:<5} {:<32}{at:<4} residual {residual:<9} {}", c.id, c.detail);
    }
    let json = report.to_json();
    match out.as_deref() {
        None => {}
        Some(p) if p.as_os_str() == "-" => println!("{json}"),
        Some(p) => {
            if let Err(e) = std::fs::File::create(p).and_then(|mut f| f.write_all(json.as_bytes())) {
                eprintln!("error: writing {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
