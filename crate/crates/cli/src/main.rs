fn main() {
    std::process::exit(itd_cli::run());
}
