fn main() {
    std::process::exit(pvs::cli::run(std::env::args_os()));
}
