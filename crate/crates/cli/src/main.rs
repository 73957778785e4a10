fn main() {
    std::process::exit(revalues::cli::run(std::env::args_os()));
}
