fn main() {
    std::process::exit(jordan_motive_cli::run(std::env::args().collect()));
}
