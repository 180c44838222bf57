fn main() {
    std::process::exit(twoguard_cli::run());
}
