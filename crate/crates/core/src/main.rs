use std::process::ExitCode;

fn main() -> ExitCode {
    setlab::cli::run(std::env::args_os())
}
