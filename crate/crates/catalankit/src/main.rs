fn main() {
    std::process::exit(catalankit::cli::run(std::env::args_os()));
}
