fn main() {
    std::process::exit(qrr::cli::run(std::env::args_os()));
}
