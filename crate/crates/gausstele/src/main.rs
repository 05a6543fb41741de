fn main() {
    std::process::exit(gausstele::cli::run());
}
