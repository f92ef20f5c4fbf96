fn main() {
    std::process::exit(tiemzi::cli::main_with_args(std::env::args_os()));
}
