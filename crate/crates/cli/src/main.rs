use clap::Parser;

fn main() {
    let cli = suita::Cli::parse();
    if let Err(e) = suita::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
