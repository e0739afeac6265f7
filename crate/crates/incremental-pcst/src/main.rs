fn main() {
    std::process::exit(incremental_pcst::cli::run());
}
