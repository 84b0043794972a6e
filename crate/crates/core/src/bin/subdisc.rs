fn main() {
    std::process::exit(subdisc::cli::main());
}
