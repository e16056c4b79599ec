//! Delay statistics between emission events and their g²(τ) histograms.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::trajectory::{ChannelId, JumpRecord};

/// Number of later stop events paired with each start event by default.
pub const DEFAULT_LOOKAHEAD: usize = 4;
/// Pair each start event with every later stop event.
pub const ALL_PAIRS: usize = usize::MAX;
pub const DEFAULT_BINS: usize = 100;
pub const DEFAULT_TAU_MAX: f64 = 10.0;
pub const DEFAULT_STEADY_TAU_MIN: f64 = 2.0;

/// Which channels start and which stop the delay clock.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationKind {
    pub start: BTreeSet<ChannelId>,
    pub stop: BTreeSet<ChannelId>,
}

impl CorrelationKind {
    pub fn new(
        start: impl IntoIterator<Item = ChannelId>,
        stop: impl IntoIterator<Item = ChannelId>,
    ) -> Result<Self> {
        let kind = Self {
            start: start.into_iter().collect(),
            stop: stop.into_iter().collect(),
        };
        if kind.start.is_empty() || kind.stop.is_empty() {
            return Err(Error::InvalidHistogram(
                "correlation kind needs non-empty start and stop sets".into(),
            ));
        }
        Ok(kind)
    }

    fn preset(start: &[ChannelId], stop: &[ChannelId]) -> Self {
        Self {
            start: start.iter().copied().collect(),
            stop: stop.iter().copied().collect(),
        }
    }

    /// Site 1 → site 1 fluorescence.
    pub fn site1_site1() -> Self {
        Self::preset(&[ChannelId::Gamma(1)], &[ChannelId::Gamma(1)])
    }

    /// Site 1 → site 2 fluorescence.
    pub fn site1_site2() -> Self {
        Self::preset(&[ChannelId::Gamma(1)], &[ChannelId::Gamma(2)])
    }

    /// Site 2 → site 1 fluorescence.
    pub fn site2_site1() -> Self {
        Self::preset(&[ChannelId::Gamma(2)], &[ChannelId::Gamma(1)])
    }

    /// Fluorescence from either site.
    pub fn gamma_any() -> Self {
        let both = [ChannelId::Gamma(1), ChannelId::Gamma(2)];
        Self::preset(&both, &both)
    }

    /// Transmission → transmission.
    pub fn kappa_kappa() -> Self {
        Self::preset(&[ChannelId::Kappa], &[ChannelId::Kappa])
    }
}

impl FromStr for CorrelationKind {
    type Err = String;

    /// Short names `g1g1`, `g1g2`, `g2g1`, `g2g2`, `gany`, `kk`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let g = ChannelId::Gamma;
        Ok(match s {
            "g1g1" => Self::site1_site1(),
            "g1g2" => Self::site1_site2(),
            "g2g1" => Self::site2_site1(),
            "g2g2" => Self::preset(&[g(2)], &[g(2)]),
            "gany" => Self::gamma_any(),
            "kk" => Self::kappa_kappa(),
            other => {
                return Err(format!(
                "unknown correlation kind `{other}` (expected g1g1, g1g2, g2g1, g2g2, gany or kk)"
            ))
            }
        })
    }
}

impl fmt::Display for CorrelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |set: &BTreeSet<ChannelId>| {
            set.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("+")
        };
        write!(f, "{}->{}", join(&self.start), join(&self.stop))
    }
}

/// Splits records into per-trajectory runs, keeping record order inside each.
fn by_trajectory(records: &[JumpRecord]) -> Vec<Vec<&JumpRecord>> {
    let mut sorted: Vec<&JumpRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.trajectory_id);
    sorted
        .chunk_by(|a, b| a.trajectory_id == b.trajectory_id)
        .map(<[&JumpRecord]>::to_vec)
        .collect()
}

fn taus_in_stream(
    stream: &[&JumpRecord],
    kind: &CorrelationKind,
    lookahead: usize,
    tau_max: f64,
    gamma: f64,
) -> Vec<f64> {
    let mut out = Vec::new();
    for (i, start) in stream.iter().enumerate() {
        if !kind.start.contains(&start.channel) {
            continue;
        }
        let stops = stream[i + 1..]
            .iter()
            .filter(|r| kind.stop.contains(&r.channel))
            .take(lookahead);
        for stop in stops {
            let tau = gamma * (stop.time - start.time);
            if tau > tau_max {
                break;
            }
            out.push(tau);
        }
    }
    out
}

/// Delays `τ = γ(t_stop − t_start)` between each start event and the next
/// `lookahead` stop events of the same trajectory, keeping `τ ≤ tau_max`.
///
/// Records must be time-ordered within each trajectory.
pub fn collect_taus(
    records: &[JumpRecord],
    kind: &CorrelationKind,
    lookahead: usize,
    tau_max: f64,
    gamma: f64,
) -> Vec<f64> {
    by_trajectory(records)
        .par_iter()
        .map(|stream| taus_in_stream(stream, kind, lookahead, tau_max, gamma))
        .collect::<Vec<_>>()
        .concat()
}

/// How bin counts are turned into g² values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// count ÷ (n_tau / n_bins)
    GlobalRatio,
    /// count ÷ mean count of the bins centred beyond `tau_min`.
    SteadyState { tau_min: f64 },
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normalization::GlobalRatio => f.write_str("global_ratio"),
            Normalization::SteadyState { tau_min } => write!(f, "steady_state(tau>{tau_min})"),
        }
    }
}

/// Uniformly binned delay histogram on `[0, tau_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct G2Histogram {
    pub tau_max: f64,
    pub counts: Vec<u64>,
    pub values: Vec<f64>,
    pub normalization: Normalization,
    /// Free-form description of the start/stop channels.
    pub kind: String,
    pub lookahead: usize,
}

impl G2Histogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_width(&self) -> f64 {
        self.tau_max / self.n_bins() as f64
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.bin_width()
    }

    pub fn bin_edges(&self) -> Vec<f64> {
        (0..=self.n_bins())
            .map(|i| i as f64 * self.bin_width())
            .collect()
    }

    /// Number of binned delays.
    pub fn n_tau(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn with_meta(mut self, kind: &CorrelationKind, lookahead: usize) -> Self {
        self.kind = kind.to_string();
        self.lookahead = lookahead;
        self
    }

    fn renormalize(&mut self) -> Result<()> {
        let divisor = match self.normalization {
            Normalization::GlobalRatio => self.n_tau() as f64 / self.n_bins() as f64,
            Normalization::SteadyState { tau_min } => {
                let tail: Vec<u64> = (0..self.n_bins())
                    .filter(|&i| self.bin_center(i) > tau_min)
                    .map(|i| self.counts[i])
                    .collect();
                if tail.is_empty() {
                    return Err(Error::NoSteadyStateBins {
                        tau_min,
                        tau_max: self.tau_max,
                    });
                }
                tail.iter().sum::<u64>() as f64 / tail.len() as f64
            }
        };
        self.values = self
            .counts
            .iter()
            .map(|&c| {
                if divisor > 0.0 {
                    c as f64 / divisor
                } else {
                    0.0
                }
            })
            .collect();
        Ok(())
    }

    /// Adds the counts of `other` (same binning) and renormalizes.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.n_bins() != other.n_bins() || self.tau_max != other.tau_max {
            return Err(Error::InvalidHistogram(
                "cannot merge histograms with different binning".into(),
            ));
        }
        let mut out = self.clone();
        for (c, o) in out.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        out.renormalize()?;
        Ok(out)
    }
}

/// Bins `taus` into `n_bins` equal bins over `[0, tau_max]` and normalizes by
/// the mean count per bin.
pub fn build_histogram(taus: &[f64], n_bins: usize, tau_max: f64) -> Result<G2Histogram> {
    if n_bins == 0 {
        return Err(Error::InvalidHistogram("n_bins must be >= 1".into()));
    }
    if !(tau_max > 0.0 && tau_max.is_finite()) {
        return Err(Error::InvalidHistogram(format!(
            "tau_max must be > 0, got {tau_max}"
        )));
    }
    let width = tau_max / n_bins as f64;
    let mut counts = vec![0u64; n_bins];
    for &tau in taus {
        if (0.0..=tau_max).contains(&tau) {
            let bin = ((tau / width) as usize).min(n_bins - 1);
            counts[bin] += 1;
        }
    }
    let mut h = G2Histogram {
        tau_max,
        counts,
        values: Vec::new(),
        normalization: Normalization::GlobalRatio,
        kind: String::new(),
        lookahead: DEFAULT_LOOKAHEAD,
    };
    h.renormalize()?;
    Ok(h)
}

/// Re-normalizes to the steady-state level: every value is divided by the
/// mean of the bins centred beyond `tau_min`.
pub fn steady_state_rescale(h: &G2Histogram, tau_min: f64) -> Result<G2Histogram> {
    if tau_min >= h.tau_max {
        return Err(Error::NoSteadyStateBins {
            tau_min,
            tau_max: h.tau_max,
        });
    }
    let mut out = h.clone();
    out.normalization = Normalization::SteadyState { tau_min };
    out.renormalize()?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PeriodEstimate {
    Period(f64),
    NoOscillation,
}

impl PeriodEstimate {
    pub fn period(self) -> Option<f64> {
        match self {
            PeriodEstimate::Period(p) => Some(p),
            PeriodEstimate::NoOscillation => None,
        }
    }
}

/// Peak spectral power must exceed this multiple of the median power over
/// the search band.
pub const PERIOD_SIGNIFICANCE: f64 = 25.0;

/// Dominant oscillation period of `values` sampled every `spacing`.
///
/// The mean-subtracted, Hann-windowed series is zero-padded and transformed;
/// the strongest local maximum among frequencies above 1.5 cycles per window
/// is refined by parabolic interpolation.
pub fn dominant_period(values: &[f64], spacing: f64) -> PeriodEstimate {
    let n = values.len();
    if n < 8 || spacing <= 0.0 {
        return PeriodEstimate::NoOscillation;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let hann = |i: usize| {
        let x = std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
        x.sin().powi(2)
    };
    let pad = (64 * n).next_power_of_two().max(4096);
    let mut buf: Vec<Complex<f64>> = (0..pad)
        .map(|i| {
            let v = if i < n {
                (values[i] - mean) * hann(i)
            } else {
                0.0
            };
            Complex::new(v, 0.0)
        })
        .collect();
    if buf.iter().all(|c| c.re == 0.0) {
        return PeriodEstimate::NoOscillation;
    }
    FftPlanner::new().plan_fft_forward(pad).process(&mut buf);
    let power: Vec<f64> = buf[..=pad / 2].iter().map(|c| c.norm_sqr()).collect();

    // Padded bins per independent frequency.
    let step = pad / n;
    let lo = (3 * step) / 2;
    let hi = pad / 2 - 1;
    let (peak, peak_power) = (lo..=hi)
        .map(|k| (k, power[k]))
        .fold(
            (lo, f64::MIN),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        );
    if peak == lo || peak == hi || power[peak - 1] > peak_power || power[peak + 1] > peak_power {
        return PeriodEstimate::NoOscillation;
    }
    let mut coarse: Vec<f64> = (lo..=hi).step_by(step).map(|k| power[k]).collect();
    coarse.sort_by(f64::total_cmp);
    let median = coarse[coarse.len() / 2];
    if peak_power.partial_cmp(&(PERIOD_SIGNIFICANCE * median)) != Some(std::cmp::Ordering::Greater)
    {
        return PeriodEstimate::NoOscillation;
    }
    let (a, b, c) = (power[peak - 1], peak_power, power[peak + 1]);
    let denom = a - 2.0 * b + c;
    let shift = if denom != 0.0 {
        0.5 * (a - c) / denom
    } else {
        0.0
    };
    let freq = (peak as f64 + shift) / (pad as f64 * spacing);
    PeriodEstimate::Period(1.0 / freq)
}

/// Oscillation period of the normalized histogram values.
pub fn extract_period(h: &G2Histogram) -> PeriodEstimate {
    dominant_period(&h.values, h.bin_width())
}
