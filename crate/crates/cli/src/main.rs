fn main() {
    std::process::exit(usvkit_cli::run(std::env::args_os()));
}
