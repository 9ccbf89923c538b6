fn main() {
    std::process::exit(macd_core::cli::run(std::env::args_os()));
}
