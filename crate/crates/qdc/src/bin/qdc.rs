//! Command-line front end: sweeps, fragment export, recombination of
//! measured counts, calibration auditing and plain QASM export.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qdc::experiment::{
    cmd_calibrate, cmd_cut, cmd_recombine, run_sweep, write_sweep, Backend, ExperimentConfig, Mode,
};
use qdc::qasm::export_qasm;
use qdc::{build_ghz_chain, Error, Result};

#[derive(Parser)]
#[command(name = "qdc", about = "Cut, simulate and recombine entangled-chain circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the (m, n_fragments) sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's root seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for sweep.json and sweep.csv.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the config's mode (exact | sampled).
        #[arg(long)]
        mode: Option<Mode>,
        /// Override the config's backend (density | trajectory).
        #[arg(long)]
        backend: Option<Backend>,
    },
    /// Cut a chain circuit and export one QASM file per fragment variant.
    Cut {
        /// Chain length (number of qubits).
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        fragments: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Recombine externally measured variant counts via a cut manifest.
    Recombine {
        #[arg(long)]
        manifest: PathBuf,
        /// Directory holding one counts file per manifest variant.
        #[arg(long)]
        counts: PathBuf,
        #[arg(long, default_value_t = 100)]
        resamples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of stdout only.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Resolve a calibration file and print every derived noise parameter.
    Calibrate {
        /// Calibration file; omitted means the built-in defaults.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Emit the uncut chain circuit as OpenQASM 2.0.
    ExportQasm {
        #[arg(long)]
        m: usize,
        /// Output file; omitted means stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep { config, seed, out, mode, backend } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::io(config.display().to_string(), e))?;
            let mut cfg = ExperimentConfig::parse(&text)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(mode) = mode {
                cfg.mode = mode;
            }
            if let Some(backend) = backend {
                cfg.backend = backend;
            }
            cfg.validate()?;
            let result = run_sweep(&cfg)?;
            write_sweep(&result, &out)?;
            print!("{}", result.to_csv());
            for row in &result.rows {
                if row.status != "ok" {
                    eprintln!("skipped m={} n={}: {}", row.m, row.n_fragments, row.status);
                }
            }
        }
        Command::Cut { m, fragments, out } => {
            let manifest = cmd_cut(m, fragments, &out)?;
            println!(
                "wrote {} variant files and {} to {}",
                manifest.variants.len(),
                qdc::experiment::MANIFEST_FILE,
                out.display()
            );
        }
        Command::Recombine { manifest, counts, resamples, seed, out } => {
            let report = cmd_recombine(&manifest, &counts, resamples, seed)?;
            let text = serde_json::to_string_pretty(&report).map_err(Error::from)?;
            println!("{text}");
            if let Some(path) = out {
                std::fs::write(&path, &text)
                    .map_err(|e| Error::io(path.display().to_string(), e))?;
            }
        }
        Command::Calibrate { config } => {
            let report = cmd_calibrate(config.as_deref())?;
            println!("{}", serde_json::to_string_pretty(&report).map_err(Error::from)?);
        }
        Command::ExportQasm { m, out } => {
            let text = export_qasm(&build_ghz_chain(m)?);
            match out {
                Some(path) => std::fs::write(&path, &text)
                    .map_err(|e| Error::io(path.display().to_string(), e))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
