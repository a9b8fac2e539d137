fn main() { stronghom::cli::main(); }
