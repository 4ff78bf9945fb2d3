fn main() {
    std::process::exit(cr_umbilic::cli::run(std::env::args_os()));
}
