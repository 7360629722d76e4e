fn main() -> std::process::ExitCode {
    elliptic_quintic::cli::run()
}
