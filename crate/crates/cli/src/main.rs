use clap::Parser;
use padic_hyper_cli::commands::{dispatch, summary, Cli};

fn main() {
    let cli = Cli::parse();
    let report = dispatch(&cli);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", summary(&report));
    }
    std::process::exit(report.status.exit_code());
}
