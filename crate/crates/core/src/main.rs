fn main() {
    std::process::exit(tscale::cli::run_from(std::env::args_os()));
}
