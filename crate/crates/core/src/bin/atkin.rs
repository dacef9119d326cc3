use std::process::ExitCode;

use atkin_ut::cli::{run, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match run(&cfg) {
        Ok(out) => {
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
