use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use qtraj_core::correlations::{
    build_histogram, collect_taus, steady_state_rescale, CorrelationKind, G2Histogram,
};
use qtraj_core::statespace::{
    bad_cavity_counts, bose_hubbard_count, enumerate_configs, total_states, Mode, StateSpaceSpec,
};
use qtraj_core::theory::{Curve, Theory};
use qtraj_core::trajectory::{run_trajectories, ChannelCounts, JumpRecord};

use crate::config::{HistogramSettings, RunConfig};
use crate::io;
use crate::CliError;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "QTRAJ_THREADS";

/// Reads [`THREADS_ENV`]; unset means no cap.
pub fn thread_cap_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Threads(e.to_string())),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Threads(format!(
                "{THREADS_ENV} must be a positive integer, got `{raw}`"
            ))),
        },
    }
}

/// Runs `f` on a pool of at most `cap` workers.
pub fn with_workers<R: Send>(
    cap: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cap {
        builder = builder.num_threads(n.min(rayon::max_num_threads()));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    Ok(pool.install(f))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationSummary {
    pub n_trajectories: u64,
    pub steps_per_trajectory: u64,
    pub counts: ChannelCounts,
}

impl fmt::Display for SimulationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.counts;
        write!(
            f,
            "trajectories={} steps_per_trajectory={} gamma1={} gamma2={} kappa={} total={}",
            self.n_trajectories,
            self.steps_per_trajectory,
            c.gamma1,
            c.gamma2,
            c.kappa,
            c.total()
        )?;
        if c.other > 0 {
            write!(f, " other={}", c.other)?;
        }
        Ok(())
    }
}

/// Runs every trajectory of `cfg` and returns its records sorted by
/// `(trajectory_id, time)`.
pub fn simulate(
    cfg: &RunConfig,
    threads: Option<usize>,
) -> Result<(Vec<JumpRecord>, SimulationSummary), CliError> {
    cfg.validate()?;
    let ids = cfg.trajectory_ids();
    log::info!(
        "simulating trajectories {ids:?} with {} steps each ({} backend)",
        cfg.params.n_steps,
        cfg.backend
    );
    let mut records = with_workers(threads, || run_trajectories(&cfg.params, cfg.backend, ids))??;
    sort_records(&mut records);
    let summary = SimulationSummary {
        n_trajectories: cfg.n_trajectories,
        steps_per_trajectory: cfg.params.n_steps,
        counts: ChannelCounts::from_records(&records),
    };
    Ok((records, summary))
}

pub fn cmd_simulate<W: Write>(
    cfg: &RunConfig,
    threads: Option<usize>,
    out: &mut W,
) -> Result<SimulationSummary, CliError> {
    let (records, summary) = simulate(cfg, threads)?;
    io::write_records(out, &records)?;
    out.flush()?;
    Ok(summary)
}

fn sort_records(records: &mut [JumpRecord]) {
    records.sort_by(|a, b| {
        a.trajectory_id
            .cmp(&b.trajectory_id)
            .then(a.time.total_cmp(&b.time))
    });
}

/// Delay histogram of `records` for `kind`.
pub fn g2_histogram(
    records: &[JumpRecord],
    kind: &CorrelationKind,
    settings: &HistogramSettings,
    gamma: f64,
) -> Result<G2Histogram, CliError> {
    let mut sorted = records.to_vec();
    sort_records(&mut sorted);
    let taus = collect_taus(&sorted, kind, settings.lookahead, settings.tau_max, gamma);
    let mut h = build_histogram(&taus, settings.bins, settings.tau_max)?
        .with_meta(kind, settings.lookahead);
    if settings.steady_norm {
        h = steady_state_rescale(&h, settings.steady_tau_min)?;
    }
    Ok(h)
}

pub fn cmd_g2<W: Write>(
    records: &[JumpRecord],
    cfg: &RunConfig,
    threads: Option<usize>,
    out: &mut W,
) -> Result<G2Histogram, CliError> {
    cfg.validate()?;
    let h = with_workers(threads, || {
        g2_histogram(records, &cfg.kind, &cfg.histogram, cfg.params.gamma)
    })??;
    io::write_histogram(out, &h)?;
    out.flush()?;
    Ok(h)
}

/// Evaluates `curve` on `points` equally spaced delays over `[0, tau_max]`.
pub fn theory_curve(
    cfg: &RunConfig,
    curve: &str,
    tau_max: f64,
    points: usize,
) -> Result<Vec<(f64, f64)>, CliError> {
    let curve: Curve = curve.parse().map_err(CliError::UnknownCurve)?;
    if points < 2 {
        return Err(CliError::Usage(
            "theory grid needs at least 2 points".into(),
        ));
    }
    if !(tau_max > 0.0 && tau_max.is_finite()) {
        return Err(CliError::Usage(format!(
            "tau_max must be > 0, got {tau_max}"
        )));
    }
    let theory = Theory::new(&cfg.params)?;
    let step = tau_max / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let tau = i as f64 * step;
            (tau, theory.eval(curve, tau))
        })
        .collect())
}

pub fn cmd_theory<W: Write>(
    cfg: &RunConfig,
    curve: &str,
    tau_max: f64,
    points: usize,
    out: &mut W,
) -> Result<(), CliError> {
    io::write_curve(out, &theory_curve(cfg, curve, tau_max, points)?)?;
    out.flush()?;
    Ok(())
}

pub const STATESPACE_COUNTS_HEADER: &str =
    "n_atoms,n_sites,bose_hubbard,full,bad_cavity,bad_cavity_single_excitation";

/// Dimension table for every `N ≤ max_atoms`, `1 ≤ L ≤ max_sites`.
pub fn cmd_statespace_counts<W: Write>(
    max_atoms: u64,
    max_sites: u64,
    out: &mut W,
) -> Result<(), CliError> {
    writeln!(out, "{STATESPACE_COUNTS_HEADER}")?;
    for n in 0..=max_atoms {
        for l in 1..=max_sites {
            let full = total_states(&StateSpaceSpec::new(n, l, Mode::Full)?)?;
            let bc = bad_cavity_counts(n, l)?;
            writeln!(
                out,
                "{n},{l},{},{full},{},{}",
                bose_hubbard_count(n, l)?,
                bc.formula,
                bc.single_excitation
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Occupancy configurations of `N` atoms on `L` sites, one column per site.
pub fn cmd_statespace_enumerate<W: Write>(
    n_atoms: u64,
    n_sites: u64,
    out: &mut W,
) -> Result<(), CliError> {
    let configs = enumerate_configs(n_atoms, n_sites)?;
    let header: Vec<String> = (1..=n_sites).map(|s| format!("site{s}")).collect();
    writeln!(out, "index,{}", header.join(","))?;
    for (i, c) in configs.iter().enumerate() {
        let occ: Vec<String> = c.0.iter().map(u64::to_string).collect();
        writeln!(out, "{i},{}", occ.join(","))?;
    }
    out.flush()?;
    Ok(())
}

/// Merges record sets from separate shards. Each trajectory id must come from
/// a single input; the result is sorted by `(trajectory_id, time)` and keeps
/// input order for equal times.
pub fn merge_records(inputs: &[Vec<JumpRecord>]) -> Result<Vec<JumpRecord>, CliError> {
    let mut owner: BTreeMap<u64, usize> = BTreeMap::new();
    for (i, recs) in inputs.iter().enumerate() {
        for r in recs {
            match owner.insert(r.trajectory_id, i) {
                Some(prev) if prev != i => {
                    return Err(CliError::IdCollision {
                        trajectory_id: r.trajectory_id,
                        first: prev,
                        second: i,
                    })
                }
                _ => {}
            }
        }
    }
    let mut merged: Vec<JumpRecord> = inputs.concat();
    sort_records(&mut merged);
    Ok(merged)
}
