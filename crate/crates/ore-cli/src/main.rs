use clap::Parser;

fn main() {
    let cli = ore_cli::Cli::parse();
    std::process::exit(ore_cli::run(cli));
}
