use std::io;
use std::process::ExitCode;

use clap::Parser;
use helstrom_core::cli::{run, Cli, EXIT_INVALID, EXIT_OK};

fn main() -> ExitCode {
    let code = match Cli::try_parse() {
        Ok(cli) => run(cli, &mut io::stdout().lock(), &mut io::stderr().lock()),
        Err(e) => {
            let _ = e.print();
            // usage errors count as invalid input; --help and --version succeed
            if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            }
        }
    };
    ExitCode::from(code as u8)
}
