use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(nonclass::cli::run(std::env::args()) as u8)
}
