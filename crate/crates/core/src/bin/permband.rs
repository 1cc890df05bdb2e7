fn main() {
    std::process::exit(permband::cli::main_with_env());
}
