fn main() {
    std::process::exit(hankel_cert::cli::run(std::env::args_os()));
}
