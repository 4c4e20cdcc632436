fn main() {
    std::process::exit(csmult::cli::run_from_args(std::env::args_os()));
}
