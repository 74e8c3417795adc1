fn main() {
    std::process::exit(gowerslab::cli::run(std::env::args_os()));
}
