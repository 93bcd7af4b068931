fn main() {
    std::process::exit(scarfkit::cli::run(std::env::args_os()));
}
