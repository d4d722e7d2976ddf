fn main() {
    std::process::exit(mac_hodge::cli::run(std::env::args_os()));
}
