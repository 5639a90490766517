fn main() {
    std::process::exit(pbcsynth::cli::main())
}
