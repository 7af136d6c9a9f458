fn main() {
    std::process::exit(bsl_core::cli::run(std::env::args_os()));
}
