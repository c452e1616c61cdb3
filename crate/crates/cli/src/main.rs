use std::process::ExitCode;

use clap::Parser;
use exciton_qfi_cli::{args::Cli, run, OracleMismatch, UsageError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(m) => {
            for o in &m.outputs {
                eprintln!("wrote {} ({} bytes, sha256 {})", cli.out.join(&o.file).display(), o.bytes, o.sha256);
            }
            if let Some(o) = &m.oracle {
                eprintln!("oracle: {} checks, max deviation {:.3e}", o.checked, o.max_deviation);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else if e.is::<OracleMismatch>() {
                ExitCode::from(3)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
