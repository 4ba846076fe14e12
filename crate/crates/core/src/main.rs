fn main() {
    std::process::exit(ordkit::cli::main_with_args(std::env::args_os()));
}
