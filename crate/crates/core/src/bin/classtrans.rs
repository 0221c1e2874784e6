use clap::Parser;

use classtrans::cli::{self, Cli};
use classtrans::Error;

fn main() {
    let cli = Cli::parse();
    let outcome = cli::run(&cli, &mut std::io::stdout().lock());
    match &outcome {
        Err(Error::Falsified(counterexample)) => {
            println!("{}", serde_json::json!({ "falsified": counterexample }));
            eprintln!("error: {}", outcome.as_ref().unwrap_err());
        }
        Err(e) => eprintln!("error: {e}"),
        Ok(_) => {}
    }
    std::process::exit(cli::exit_code(&outcome));
}
