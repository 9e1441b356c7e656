fn main() {
    std::process::exit(plie::cli::run_from_env());
}
