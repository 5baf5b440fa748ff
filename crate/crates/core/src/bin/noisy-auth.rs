use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(noisy_auth::cli::run(std::env::args_os()) as u8)
}
