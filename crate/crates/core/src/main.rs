fn main() {
    std::process::exit(powerchar::cli::run());
}
