use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = stabring::cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = stabring::cli::run_from_args(std::env::args_os().skip(1));
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
