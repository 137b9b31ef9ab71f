use clap::Parser;

use holesat::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let code = execute(&cli, &mut std::io::stdout().lock());
    std::process::exit(code);
}
