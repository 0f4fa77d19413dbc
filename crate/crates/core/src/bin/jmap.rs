fn main() {
    std::process::exit(jmap::cli::main_with_args(std::env::args_os()));
}
