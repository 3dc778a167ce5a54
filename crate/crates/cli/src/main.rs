use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fredkin_zeno::{DissipatorConvention, Model};
use fredkin_zeno_cli::commands::{self, Outcome};
use fredkin_zeno_cli::{exit, write_csv, CliError, Config, Overrides, Result};

#[derive(Parser, Debug)]
#[command(name = "fredkin-zeno", version, about = "Zeno-dynamics Fredkin gate simulator")]
struct Cli {
    /// TOML configuration file; every key is optional.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file for sweep CSVs and the zeno-report eigenvalue table.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    model: Option<ModelArg>,
    #[arg(long, global = true, value_enum)]
    dissipator: Option<DissipatorArg>,
    /// Photon-number truncation per mode.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Propagate the eight computational basis states for one gate time.
    TruthTable,
    /// Fidelity and success probability over a kappa x gamma grid (CSV).
    Sweep,
    /// Run with rates in 2 pi MHz and report gate times in microseconds.
    Physical,
    /// Eigenvalues of the cavity coupling on the closed subspaces.
    ZenoReport,
    /// Compare full evolution with the closed-form Zeno-limit states.
    AnalyticCompare,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ModelArg {
    Resonant,
    Detuned,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DissipatorArg {
    Conventional,
    Literal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::from(exit::SUCCESS as u8),
        Ok(false) => ExitCode::from(exit::BELOW_FLOOR as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::VALIDATION as u8)
        }
    }
}

fn print(outcome: &Outcome) -> Result<bool> {
    let mut out = io::stdout().lock();
    out.write_all(outcome.report.as_bytes())
        .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    Ok(outcome.passed)
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::Io { path: path.clone(), source })
}

fn run(cli: &Cli) -> Result<bool> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let model_override = cli.model.map(|m| match m {
        ModelArg::Resonant => Model::Resonant,
        ModelArg::Detuned => Model::Detuned,
    });
    cfg.apply(&Overrides {
        model: model_override,
        dissipator: cli.dissipator.map(|d| match d {
            DissipatorArg::Conventional => DissipatorConvention::Conventional,
            DissipatorArg::Literal => DissipatorConvention::Literal,
        }),
        n_max: cli.nmax,
        output: cli.output.clone(),
    });
    // Commands that naturally cover both models run both unless --model
    // narrows them down.
    let models: Vec<Model> = match model_override {
        Some(m) => vec![m],
        None => vec![Model::Resonant, Model::Detuned],
    };

    match cli.command {
        Command::TruthTable => print(&commands::truth_table(&cfg)?.1),
        Command::Sweep => {
            let rows = commands::sweep(&cfg)?;
            match &cfg.sweep.output {
                Some(path) => write_csv(create(path)?, &rows)?,
                None => write_csv(io::stdout().lock(), &rows)?,
            }
            Ok(true)
        }
        Command::Physical => print(&commands::physical(&cfg, &models)?.1),
        Command::ZenoReport => {
            let report = commands::zeno_report(&cfg)?;
            let passed = print(&report.outcome)?;
            let table = report.eigen_csv();
            match &cfg.zeno_report.output {
                Some(path) => create(path)?
                    .write_all(table.as_bytes())
                    .map_err(|source| CliError::Io { path: path.clone(), source })?,
                None => print!("\n{table}"),
            }
            Ok(passed)
        }
        Command::AnalyticCompare => print(&commands::analytic_compare(&cfg, &models)?.1),
    }
}
