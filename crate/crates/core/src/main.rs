fn main() {
    std::process::exit(hilbert_strata::cli::run());
}
