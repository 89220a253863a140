fn main() -> std::process::ExitCode {
    slpa::cli::main()
}
