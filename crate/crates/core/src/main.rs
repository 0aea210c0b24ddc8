fn main() {
    std::process::exit(codebounds::cli::main_with_args(std::env::args_os()));
}
