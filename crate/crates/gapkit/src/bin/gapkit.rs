fn main() {
    std::process::exit(gapkit::cli::run(std::env::args_os()));
}
