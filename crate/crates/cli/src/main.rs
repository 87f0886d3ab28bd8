use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use digitsum_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from_cli(Cli::parse());
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match run(&config, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
