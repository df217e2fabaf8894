fn main() {
    std::process::exit(singlex::cli::run(std::env::args_os()));
}
