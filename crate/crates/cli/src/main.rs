//! `wormkit`: batch runs over the worm-domain toolkit with reproducible
//! CSV/JSON artifacts.
//!
//! Exit codes: 0 success, 2 domain/configuration errors, 3 accuracy
//! errors, 64 usage errors.

mod commands;
mod output;
mod parse;

use clap::Parser;
use commands::Command;
use std::process::ExitCode;
use std::time::Instant;
use wormkit_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "wormkit",
    version,
    about = "Bergman kernels, geometry, and sharp exponents of worm domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const EXIT_DOMAIN: u8 = 2;
const EXIT_ACCURACY: u8 = 3;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    // Honor the thread cap before any parallel work starts.
    if let Ok(threads) = std::env::var("WORMKIT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }

    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful exits; everything
            // else is a usage error.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let started = Instant::now();
    let result = cli.command.run();
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    match result {
        Ok(out) => {
            let common = cli.command.common();
            if let Some(path) = &common.output {
                if let Err(e) = output::write_artifacts(
                    cli.command.name(),
                    &out,
                    common.format,
                    path,
                    &argv,
                    common.manifest_config(),
                    wall_ms,
                ) {
                    eprintln!("error writing output: {e}");
                    return ExitCode::from(1);
                }
            }
            println!("{}: {}", cli.command.name(), out.summary());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Accuracy { .. } => ExitCode::from(EXIT_ACCURACY),
                Error::Domain(_) | Error::Singularity(_) | Error::Config(_) => {
                    ExitCode::from(EXIT_DOMAIN)
                }
            }
        }
    }
}
