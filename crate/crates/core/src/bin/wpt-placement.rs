fn main() -> std::process::ExitCode {
    wpt_placement::cli::main()
}
