fn main() {
    std::process::exit(hiercert::cli::run(std::env::args_os()));
}
