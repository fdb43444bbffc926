use clap::Parser;

fn main() {
    let cli = asetrap_cli::Cli::parse();
    if let Err(e) = asetrap_cli::run(&cli) {
        eprintln!("asetrap: {e}");
        std::process::exit(e.exit_code());
    }
}
