fn main() {
    std::process::exit(gagcode::cli::run());
}
