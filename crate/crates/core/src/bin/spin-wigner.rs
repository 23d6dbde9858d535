use std::process::ExitCode;

fn main() -> ExitCode {
    spin_wigner::cli::main()
}
