use std::process::ExitCode;

fn main() -> ExitCode {
    broomrank::cli::run()
}
