fn main() {
    std::process::exit(rootdatum::cli::run(std::env::args_os()));
}
