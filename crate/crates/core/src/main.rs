fn main() {
    std::process::exit(nearortho::cli::run(std::env::args_os()));
}
