use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use qtraj::commands::{self, thread_cap_from_env};
use qtraj::config::{load_config, RunConfig};
use qtraj::io::read_records;
use qtraj_core::correlations::CorrelationKind;
use qtraj_core::trajectory::Backend;

/// Quantum-trajectory simulation of an atom hopping between two lattice
/// sites in a driven bad cavity.
#[derive(Debug, Parser)]
#[command(name = "qtraj", version)]
struct Cli {
    /// `key = value` run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, global = true, value_name = "N")]
    trajectories: Option<u64>,
    /// Time steps per trajectory.
    #[arg(long, global = true, value_name = "N")]
    steps: Option<u64>,
    #[arg(long, global = true, value_parser = ["analytic", "rk4"])]
    backend: Option<String>,
    #[arg(long, global = true, value_parser = ["g1g1", "g1g2", "g2g1", "g2g2", "gany", "kk"])]
    kind: Option<String>,
    #[arg(long, global = true, value_name = "N")]
    bins: Option<usize>,
    #[arg(long = "tau-max", global = true, value_name = "X")]
    tau_max: Option<f64>,
    /// Normalize histograms to their mean beyond `steady_tau_min`.
    #[arg(long = "steady-norm", global = true)]
    steady_norm: bool,
    /// Output file; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run trajectories and write their jump records.
    Simulate,
    /// Build a g2 histogram from a record file.
    G2 {
        /// Record file; falls back to `records` in the config.
        records: Option<PathBuf>,
    },
    /// Evaluate a closed-form correlation curve.
    Theory {
        /// g2_f_11, g2_f_12, g2_f_21, g2_f_22, g2_gamma or g2_kappa
        curve: String,
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// State-space dimensions, or the occupancy basis with --enumerate.
    Statespace {
        #[arg(long, default_value_t = 6)]
        max_atoms: u64,
        #[arg(long, default_value_t = 6)]
        max_sites: u64,
        /// List configurations of `atoms` atoms on `sites` sites from the config.
        #[arg(long)]
        enumerate: bool,
    },
    /// Merge record files from disjoint trajectory-id ranges.
    Merge {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

impl Cli {
    fn run_config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.params.seed = seed;
        }
        if let Some(n) = self.trajectories {
            cfg.n_trajectories = n;
        }
        if let Some(n) = self.steps {
            cfg.params.n_steps = n;
        }
        if let Some(b) = &self.backend {
            cfg.backend = b.parse::<Backend>().map_err(anyhow::Error::msg)?;
        }
        if let Some(k) = &self.kind {
            cfg.kind = k.parse::<CorrelationKind>().map_err(anyhow::Error::msg)?;
        }
        if let Some(n) = self.bins {
            cfg.histogram.bins = n;
        }
        if let Some(x) = self.tau_max {
            cfg.histogram.tau_max = x;
        }
        if self.steady_norm {
            cfg.histogram.steady_norm = true;
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        Ok(cfg)
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn load_records(path: &Path) -> Result<Vec<qtraj_core::trajectory::JumpRecord>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_records(BufReader::new(file)).with_context(|| format!("in {}", path.display()))
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cfg = cli.run_config()?;
    let threads = thread_cap_from_env()?;
    let out_path = cfg.out.clone();

    match &cli.command {
        Command::Simulate => {
            let mut out = output(out_path.as_deref())?;
            let summary = commands::cmd_simulate(&cfg, threads, &mut out)?;
            eprintln!("{summary}");
        }
        Command::G2 { records } => {
            let path = records
                .clone()
                .or_else(|| cfg.records.clone())
                .context("g2 needs a record file (argument or `records` in the config)")?;
            let records = load_records(&path)?;
            let mut out = output(out_path.as_deref())?;
            let h = commands::cmd_g2(&records, &cfg, threads, &mut out)?;
            log::info!("binned {} delays", h.n_tau());
        }
        Command::Theory { curve, points } => {
            let mut out = output(out_path.as_deref())?;
            commands::cmd_theory(&cfg, curve, cfg.histogram.tau_max, *points, &mut out)?;
        }
        Command::Statespace {
            max_atoms,
            max_sites,
            enumerate,
        } => {
            let mut out = output(out_path.as_deref())?;
            if *enumerate {
                commands::cmd_statespace_enumerate(
                    cfg.params.n_atoms as u64,
                    cfg.params.n_sites as u64,
                    &mut out,
                )?;
            } else {
                commands::cmd_statespace_counts(*max_atoms, *max_sites, &mut out)?;
            }
        }
        Command::Merge { files } => {
            let inputs = files
                .iter()
                .map(|p| load_records(p))
                .collect::<Result<Vec<_>>>()?;
            let merged = commands::merge_records(&inputs)?;
            let mut out = output(out_path.as_deref())?;
            qtraj::io::write_records(&mut out, &merged)?;
            out.flush()?;
        }
    }
    Ok(())
}
