use clap::Parser;
use mixcert_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    match mixcert_cli::run(&cli) {
        Ok(output) => {
            if let Some(summary) = &output.summary {
                eprintln!("{summary}");
            }
            std::process::exit(output.exit_code);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.code);
        }
    }
}
