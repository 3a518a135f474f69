fn main() {
    std::process::exit(gamma_qm::cli::main_entry());
}
