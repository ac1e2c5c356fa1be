fn main() {
    std::process::exit(mittag::cli::run(std::env::args_os()));
}
