fn main() {
    std::process::exit(grover2q::cli::run(std::env::args()));
}
