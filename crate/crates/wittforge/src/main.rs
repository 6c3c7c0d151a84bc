fn main() {
    std::process::exit(wittforge::cli::main_with_args(std::env::args_os()));
}
