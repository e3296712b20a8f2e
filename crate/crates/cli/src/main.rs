use clap::Parser;
use torcfg_cli::{configure_threads, run, RunConfig, EXIT_USAGE};

fn main() {
    let config = RunConfig::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        std::process::exit(EXIT_USAGE);
    }
    let outcome = run(&config);
    if outcome.output.starts_with("error:") {
        eprint!("{}", outcome.output);
    } else if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, &outcome.output) {
            eprintln!("error: {}: {e}", path.display());
            std::process::exit(EXIT_USAGE);
        }
    } else {
        print!("{}", outcome.output);
    }
    std::process::exit(outcome.code);
}
