use clap::Parser;
use realeep::cli::{run, Cli};

fn main() {
    let result = run(Cli::parse());
    print!("{}", result.report);
    std::process::exit(result.exit_code);
}
