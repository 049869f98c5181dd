fn main() {
    std::process::exit(copychains::cli::run(std::env::args_os()));
}
