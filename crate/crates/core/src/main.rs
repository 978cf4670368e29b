fn main() {
    std::process::exit(jclass::cli::main_with_args(std::env::args_os()));
}
