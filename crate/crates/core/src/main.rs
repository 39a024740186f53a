fn main() {
    std::process::exit(genconcept::cli::run(std::env::args_os()));
}
