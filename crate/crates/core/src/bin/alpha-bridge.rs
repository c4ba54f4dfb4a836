fn main() {
    std::process::exit(alpha_bridge::cli::main_with_args(std::env::args_os()));
}
