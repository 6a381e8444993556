fn main() {
    std::process::exit(eigensync::cli::run_from_env());
}
