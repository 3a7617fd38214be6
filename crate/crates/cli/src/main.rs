use std::io;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use rep12_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let code = run(&cli, &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
