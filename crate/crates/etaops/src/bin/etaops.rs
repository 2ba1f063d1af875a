fn main() {
    std::process::exit(i32::from(etaops::cli::run()));
}
