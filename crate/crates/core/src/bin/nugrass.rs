fn main() {
    std::process::exit(nugrass::cli::run(std::env::args_os()));
}
