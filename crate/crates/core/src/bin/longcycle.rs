fn main() -> std::process::ExitCode {
    longcycle::cli::main_from_env()
}
