fn main() {
    std::process::exit(bessel_rbf::cli::run(std::env::args_os()));
}
