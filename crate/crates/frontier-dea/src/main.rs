use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(frontier_dea::cli::run(std::env::args_os()))
}
