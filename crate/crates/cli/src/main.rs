fn main() {
    std::process::exit(ontoclean_cli::main_with_args(std::env::args_os()));
}
