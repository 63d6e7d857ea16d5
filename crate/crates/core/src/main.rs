fn main() {
    std::process::exit(domreconf::cli::run_cli(std::env::args_os()));
}
