use std::process::ExitCode;

use clap::Parser;
use hochlat::cli::{report_error, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            report_error(cli.format, &e, &mut stdout, &mut std::io::stderr());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
