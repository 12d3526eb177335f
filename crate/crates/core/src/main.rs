fn main() {
    std::process::exit(gtcrypt::cli::run(std::env::args_os()));
}
