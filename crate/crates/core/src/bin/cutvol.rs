fn main() {
    std::process::exit(cutvol::cli::run(std::env::args_os()));
}
