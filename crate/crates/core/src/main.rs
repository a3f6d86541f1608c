fn main() {
    std::process::exit(farey_mertens::cli::run());
}
