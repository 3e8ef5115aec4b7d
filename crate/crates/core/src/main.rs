fn main() {
    std::process::exit(hyperdual::cli::run(std::env::args_os()));
}
