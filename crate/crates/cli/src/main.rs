mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Merge(a) => commands::merge(a),
        Command::Cluster(a) => commands::cluster_cmd(a),
        Command::Elbow(a) => commands::elbow(a),
        Command::Bench(a) => commands::bench(a),
        Command::SeedPreview(a) => commands::seed_preview_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
