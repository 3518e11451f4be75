use clap::Parser;
use sliceplan_cli::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(sliceplan_cli::run(cli));
}
