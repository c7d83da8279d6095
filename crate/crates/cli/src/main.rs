//! `nonstatic-phase`: figure data and validation for nonstatic Fock-state
//! light waves.

mod battery;
mod commands;
mod config;
mod table;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use config::{Command, Flags, Layer, RunConfig};

const THREADS_VAR: &str = "NONSTATIC_PHASE_THREADS";
const DEFAULT_REPORT: &str = "validation-report.json";

#[derive(Parser)]
#[command(name = "nonstatic-phase", version, about = "Phases and densities of nonstatic Fock-state light waves")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Probability density on a t × q grid.
    #[command(allow_negative_numbers = true)]
    Density(Flags),
    /// Geometric, dynamical and total phases with the Hannay angle.
    #[command(allow_negative_numbers = true)]
    Phases(Flags),
    /// Time derivatives of the three phases.
    #[command(allow_negative_numbers = true)]
    Rates(Flags),
    /// Geometric phase for a list of phase angles.
    #[command(name = "sweep-phi", allow_negative_numbers = true)]
    SweepPhi(Flags),
    /// Coefficient C and nonstaticity measure.
    #[command(allow_negative_numbers = true)]
    Measure(Flags),
    /// Cross-check every closed form against the numerical oracle.
    #[command(allow_negative_numbers = true)]
    Validate(Flags),
}

impl Cmd {
    fn split(&self) -> (Command, &Flags) {
        match self {
            Cmd::Density(f) => (Command::Density, f),
            Cmd::Phases(f) => (Command::Phases, f),
            Cmd::Rates(f) => (Command::Rates, f),
            Cmd::SweepPhi(f) => (Command::SweepPhi, f),
            Cmd::Measure(f) => (Command::Measure, f),
            Cmd::Validate(f) => (Command::Validate, f),
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(value) = std::env::var(THREADS_VAR) {
        let threads: usize = value.trim().parse().with_context(|| format!("{THREADS_VAR}={value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn echo_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".config.json");
    PathBuf::from(name)
}

fn write_to(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(std::io::stdout().lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    configure_threads()?;
    let (cmd, flags) = cli.command.split();
    let file = flags.config.as_deref().map(Layer::from_file).transpose()?;
    let config = RunConfig::resolve(cmd, file, flags.layer())?;

    if let Some(out) = &flags.out {
        std::fs::write(echo_path(out), config.echo()).with_context(|| format!("writing config echo for {}", out.display()))?;
    }

    if cmd == Command::Validate {
        let report = battery::run(&config)?;
        let path = flags.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT));
        write_to(Some(&path), |w| {
            serde_json::to_writer_pretty(&mut *w, &report)?;
            writeln!(w)
        })?;
        for run in &report.runs {
            let failed: Vec<&str> = run.report.failures().map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                eprintln!("PASS {} ({} checks)", run.label, run.report.checks.len());
            } else {
                eprintln!("FAIL {}: {}", run.label, failed.join(", "));
            }
        }
        eprintln!("report written to {}", path.display());
        return Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }

    let table = match cmd {
        Command::Density => commands::density(&config)?,
        Command::Phases => commands::phases(&config)?,
        Command::Rates => commands::rates(&config)?,
        Command::SweepPhi => commands::sweep_phi(&config)?,
        Command::Measure => commands::measure(&config)?,
        Command::Validate => unreachable!(),
    };
    write_to(flags.out.as_deref(), |w| table.write(config.format, w))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
