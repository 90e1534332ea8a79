fn main() {
    std::process::exit(bendpoint_cli::run(std::env::args_os()));
}
