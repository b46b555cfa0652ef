fn main() {
    std::process::exit(kla::cli::main());
}
