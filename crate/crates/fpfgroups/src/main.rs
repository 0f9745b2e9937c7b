use std::process::ExitCode;

fn main() -> ExitCode {
    fpfgroups::cli::main()
}
