use std::process::ExitCode;

fn main() -> ExitCode {
    latring::cli::run()
}
