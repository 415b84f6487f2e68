fn main() {
    std::process::exit(mdsforge::cli::run(std::env::args_os()));
}
