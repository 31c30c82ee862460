fn main() {
    std::process::exit(vacent::cli::main_with_args(std::env::args_os()));
}
