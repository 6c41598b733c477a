use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use wesym_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own usage status is 2, which is reserved for table mismatches.
            let code = if e.use_stderr() { 64 } else { 0 };
            e.print().expect("printing usage");
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("wesym: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("wesym: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
