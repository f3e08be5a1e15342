fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(lkit::cli::run(&argv));
}
