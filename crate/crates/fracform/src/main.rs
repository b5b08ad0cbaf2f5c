use std::process::ExitCode;

fn main() -> ExitCode {
    fracform::cli::run(std::env::args_os())
}
