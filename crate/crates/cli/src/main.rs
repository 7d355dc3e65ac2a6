fn main() {
    std::process::exit(hechain_cli::run(std::env::args_os()));
}
