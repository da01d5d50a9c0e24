use adequacy_cli::{execute, render, Cli};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let code = match execute(&cli) {
        Ok(outcome) => {
            print!("{}", render(&outcome.report));
            outcome.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    };
    std::process::exit(code);
}
