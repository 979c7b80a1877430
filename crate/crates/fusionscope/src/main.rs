fn main() {
    std::process::exit(fusionscope::cli::run_from_env());
}
