use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(kgt::commands::run_from(std::env::args_os()))
}
