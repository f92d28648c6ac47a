fn main() {
    std::process::exit(covercost::cli::run());
}
