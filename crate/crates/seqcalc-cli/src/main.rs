fn main() {
    std::process::exit(seqcalc_cli::run(std::env::args_os()));
}
