fn main() {
    std::process::exit(ramanujan::cli::run_from(std::env::args_os()));
}
