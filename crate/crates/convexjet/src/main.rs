fn main() {
    std::process::exit(convexjet::cli::run());
}
