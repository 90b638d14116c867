use clap::Parser;

fn main() {
    let cli = hcvi::cli::Cli::parse();
    if let Err(e) = hcvi::cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
