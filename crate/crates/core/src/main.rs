fn main() {
    std::process::exit(stafield::cli::main_with_args(std::env::args_os()));
}
