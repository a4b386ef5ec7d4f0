fn main() {
    std::process::exit(coninv::cli::run());
}
