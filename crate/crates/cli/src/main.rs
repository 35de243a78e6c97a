use std::process::ExitCode;

use clap::Parser;
use torfold_cli::{run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TORFOLD_LOG", "warn")).init();
    let cli = Cli::parse();
    let code = match run(cli, &mut std::io::stdout(), &mut std::io::stderr()) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
