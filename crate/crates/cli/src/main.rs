use std::process::ExitCode;

fn main() -> ExitCode {
    simplicial_cli::main_with(std::env::args_os())
}
