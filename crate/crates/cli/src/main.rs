fn main() {
    std::process::exit(roa_cli::main_with(std::env::args_os()));
}
