fn main() {
    std::process::exit(semigalois::cli::main_with(std::env::args_os()));
}
