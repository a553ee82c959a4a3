use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use reltrans_cli::{format, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors share the error exit code; help and version do not
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, code) = match run(&cli) {
        Ok(outcome) => (outcome.render(), outcome.exit_code()),
        Err(err) => {
            eprintln!("error: {err}");
            (format::to_canonical_string(&err.verdict().to_value()), 2)
        }
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    ExitCode::from(code as u8)
}
