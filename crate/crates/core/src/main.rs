fn main() {
    std::process::exit(hexacycle::cli::run(std::env::args_os()));
}
