fn main() {
    std::process::exit(riesz_average::cli::main());
}
