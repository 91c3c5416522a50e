use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nikolskii::config::OutputConfig;
use nikolskii::{run, CliError, ExperimentConfig, Format};

/// Runs one experiment described by a JSON config and writes its report.
#[derive(Debug, Parser)]
#[command(name = "nikolskii", version)]
struct Args {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Report path; stdout when absent (overrides `output.path`).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format (overrides `output.format`).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for every random draw (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Suppress the summary line on stderr.
    #[arg(long)]
    quiet: bool,
}

fn execute(args: &Args) -> Result<(), CliError> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let mut out = cfg.output.clone().unwrap_or(OutputConfig {
        path: None,
        format: Format::Csv,
    });
    if let Some(p) = &args.output {
        out.path = Some(p.display().to_string());
    }
    if let Some(f) = args.format {
        out.format = f;
    }
    cfg.output = Some(out.clone());
    let report = run(&cfg)?;
    let text = report.render(&cfg, out.format);
    match &out.path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{p}: {e}")))?,
        None => print!("{text}"),
    }
    if !args.quiet {
        eprintln!(
            "{}: ok ({} rows){}",
            cfg.command.name(),
            report.rows.len(),
            out.path.map(|p| format!(" -> {p}")).unwrap_or_default()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
