mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "nst",
    version,
    about = "Normal surfaces and largeness of knot complements"
)]
struct Cli {
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomised simplification.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Run sequentially so repeated runs give identical traces.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Reuse results stored in this directory.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quad matching equations.
    Matchings { file: PathBuf },
    /// Enumerate admissible extremal rays of the quad cone.
    Rays {
        file: PathBuf,
        /// Restrict to closed surfaces.
        #[arg(long)]
        q0: bool,
    },
    /// Reconstruct the surface on one ray, classify it and compute its slope.
    Surface {
        file: PathBuf,
        #[arg(long)]
        ray: usize,
        /// Index into the closed-surface rays instead.
        #[arg(long)]
        q0: bool,
        /// Peripheral curves; defaults to the `.curves.json` file next to FILE.
        #[arg(long)]
        curves: Option<PathBuf>,
    },
    /// Decide whether the knot is large.
    Largeness { file: PathBuf },
    /// Run the largeness test on every triangulation in a directory.
    Batch { dir: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let kind = match e.downcast_ref::<nst_core::Error>() {
                Some(core) => core.kind(),
                None if e.downcast_ref::<std::io::Error>().is_some() => "io",
                None => "other",
            };
            eprintln!("{}", json!({ "error": kind, "message": format!("{e:#}") }));
            ExitCode::FAILURE
        }
    }
}
