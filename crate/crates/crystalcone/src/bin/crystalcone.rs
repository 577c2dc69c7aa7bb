fn main() {
    // Placeholder entry point; the subcommand front end lands with the
    // `cli` module.
    eprintln!("crystalcone: command-line interface not yet wired");
    std::process::exit(2);
}
