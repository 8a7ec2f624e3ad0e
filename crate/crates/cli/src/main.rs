fn main() {
    let code = lambda_lab_cli::run(std::env::args().collect());
    std::process::exit(code);
}
