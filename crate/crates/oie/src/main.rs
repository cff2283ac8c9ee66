fn main() -> std::process::ExitCode {
    oie::cli::main()
}
