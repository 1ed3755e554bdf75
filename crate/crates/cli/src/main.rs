use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use coalg_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let res = run(&cli, &mut stdout);
    let _ = stdout.flush();
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("coalg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
