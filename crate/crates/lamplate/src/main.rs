use clap::{Parser, Subcommand};
use lamplate::config::parse_config;
use lamplate::pipeline;
use lamplate::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lamplate", about = "Laminated Kirchhoff plate solver with interlaminar stress recovery", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one case, recover the stress profiles and write CSV/JSON artifacts
    Run { config: PathBuf },
    /// Run the S / control-point sweep and print the long-form error CSV
    Sweep { config: PathBuf },
    /// Emit the full fixture-vs-computed comparison for every embedded table
    Tables { config: PathBuf },
    /// Print the closed-form amplitude and the homogenized bending stiffness
    Navier { config: PathBuf },
}

fn load_config(path: &PathBuf) -> Result<lamplate::config::CaseConfig, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(vec![format!("cannot read {}: {e}", path.display())]))?;
    parse_config(&text)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run { config } => {
            let cfg = load_config(&config)?;
            let report = pipeline::run_case(&cfg)?;
            print!("{}", report.json);
            eprintln!(
                "wrote {} profile files and report.json to {}",
                report.csv_files.len(),
                cfg.output_dir
            );
        }
        Command::Sweep { config } => {
            let cfg = load_config(&config)?;
            let csv = pipeline::run_sweep(&cfg)?;
            print!("{csv}");
            let out = std::path::Path::new(&cfg.output_dir);
            std::fs::create_dir_all(out)?;
            std::fs::write(out.join("sweep.csv"), &csv)?;
        }
        Command::Tables { config } => {
            let cfg = load_config(&config)?;
            let csv = pipeline::tables_csv(&cfg)?;
            print!("{csv}");
            let out = std::path::Path::new(&cfg.output_dir);
            std::fs::create_dir_all(out)?;
            std::fs::write(out.join("tables.csv"), &csv)?;
        }
        Command::Navier { config } => {
            let cfg = load_config(&config)?;
            print!("{}", pipeline::navier_text(&cfg)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Config(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
