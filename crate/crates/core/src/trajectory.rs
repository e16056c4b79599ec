//! Quantum-jump unraveling of the two-site bad-cavity model.
//!
//! Each step draws one uniform number and compares it against the stacked
//! jump probabilities `[P_γ1, P_γ1 + P_γ2, P_γ1 + P_γ2 + P_κ)`. A hit collapses
//! the state through the matching operator; otherwise the state evolves for
//! one step under the non-Hermitian Hamiltonian. Either way it is
//! renormalized.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::{deriv_bc2, propagate_analytic, rk4_step, BadCavityRates, BadCavityState};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::scalar::Real;

/// Emission channel: fluorescence from a lattice site (1-based) or
/// transmission through the cavity mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelId {
    Gamma(u8),
    Kappa,
}

impl fmt::Display for ChannelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelId::Gamma(site) => write!(f, "gamma{site}"),
            ChannelId::Kappa => f.write_str("kappa"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown channel `{0}` (expected gamma<site> or kappa)")]
pub struct ParseChannelError(pub String);

impl FromStr for ChannelId {
    type Err = ParseChannelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "kappa" {
            return Ok(ChannelId::Kappa);
        }
        s.strip_prefix("gamma")
            .and_then(|n| n.parse::<u8>().ok())
            .filter(|&n| n >= 1 && !s.starts_with("gamma0"))
            .map(ChannelId::Gamma)
            .ok_or_else(|| ParseChannelError(s.to_owned()))
    }
}

/// One emission event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpRecord {
    pub trajectory_id: u64,
    /// Units of 1/γ.
    pub time: f64,
    pub channel: ChannelId,
}

/// Per-step probabilities `(P_γ1, P_γ2, P_κ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpProbabilities<T> {
    pub site1: T,
    pub site2: T,
    pub kappa: T,
}

impl<T: Real> JumpProbabilities<T> {
    pub fn total(&self) -> T {
        self.site1 + self.site2 + self.kappa
    }
}

/// Above this per-step probability the single-jump-per-step picture is
/// getting coarse.
pub const STEP_PROBABILITY_WARNING: f64 = 0.1;

/// `Re(C10e*·C10g + C01e*·C01g)`
fn coherence<T: Real>(s: &BadCavityState<T>) -> T {
    (s.c10e().conj() * s.c10g() + s.c01e().conj() * s.c01g()).re
}

/// ```text
/// P_γ1 = γ|C10e|² dt
/// P_γ2 = γ|C01e|² dt
/// P_κ  = 2[Y²/κ + (Yg/κ)·2Re(C10e*C10g + C01e*C01g) + (g²/κ)(|C10e|² + |C01e|²)] dt
/// ```
pub fn jump_probabilities<T: Real>(
    s: &BadCavityState<T>,
    p: &ModelParams<T>,
    dt: T,
) -> JumpProbabilities<T> {
    let two = T::lit(2.0);
    JumpProbabilities {
        site1: p.gamma * s.c10e().norm_sqr() * dt,
        site2: p.gamma * s.c01e().norm_sqr() * dt,
        kappa: two * cavity_intensity(s, p) * dt,
    }
}

fn cavity_intensity<T: Real>(s: &BadCavityState<T>, p: &ModelParams<T>) -> T {
    let two = T::lit(2.0);
    let (y, g, k) = (p.drive, p.g, p.kappa);
    y * y / k + y * g / k * two * coherence(s) + g * g / k * s.excited_population()
}

/// Picks the channel whose slice of `[0, ΣP)` contains `u`.
pub fn select_jump<T: Real>(probs: &JumpProbabilities<T>, u: T) -> Result<Option<ChannelId>> {
    let total = probs.total();
    if total >= T::one() {
        return Err(Error::ProbabilityOverflow(total.to_f64_lossy()));
    }
    Ok(if u < probs.site1 {
        Some(ChannelId::Gamma(1))
    } else if u < probs.site1 + probs.site2 {
        Some(ChannelId::Gamma(2))
    } else if u < total {
        Some(ChannelId::Kappa)
    } else {
        None
    })
}

/// Applies the collapse operator of `channel` without renormalizing.
///
/// `σ₋¹|ψ⟩ = C10e|10g⟩`, `σ₋²|ψ⟩ = C01e|01g⟩` and, with the eliminated field
/// `a = (g/κ)J₋ + Y/κ`,
/// `a|ψ⟩ = (Y/κ C10g + g/κ C10e)|10g⟩ + (Y/κ C01g + g/κ C01e)|01g⟩
///        + (Y/κ) C10e|10e⟩ + (Y/κ) C01e|01e⟩`.
pub fn apply_collapse<T: Real>(
    channel: ChannelId,
    s: &BadCavityState<T>,
    p: &ModelParams<T>,
) -> Result<BadCavityState<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let out = match channel {
        ChannelId::Gamma(1) => BadCavityState::new(s.c10e(), zero, zero, zero),
        ChannelId::Gamma(2) => BadCavityState::new(zero, s.c01e(), zero, zero),
        ChannelId::Gamma(site) => {
            return Err(Error::OutOfRange(format!(
                "site {site} does not exist in the two-site model"
            )))
        }
        ChannelId::Kappa => {
            let yk = p.drive / p.kappa;
            let gk = p.g / p.kappa;
            BadCavityState::new(
                s.c10g().scale(yk) + s.c10e().scale(gk),
                s.c01g().scale(yk) + s.c01e().scale(gk),
                s.c10e().scale(yk),
                s.c01e().scale(yk),
            )
        }
    };
    if out.norm_sqr() == T::zero() {
        return Err(Error::ImpossibleJump(channel));
    }
    Ok(out)
}

/// Returns the unit-norm state and the norm it had before.
pub fn renormalize<T: Real, const N: usize>(
    s: &crate::dynamics::Amplitudes<T, N>,
) -> Result<(crate::dynamics::Amplitudes<T, N>, T)> {
    let norm = s.norm();
    if norm == T::zero() || !norm.is_finite() {
        return Err(Error::ZeroNorm);
    }
    Ok((s.scaled(norm.recip()), norm))
}

/// `⟨σ₊¹σ₋¹⟩`, `⟨σ₊σ₋⟩` and `⟨a†a⟩`; `P_κ = 2·cavity·dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectations<T> {
    pub site1_excited: T,
    pub total_excited: T,
    pub cavity: T,
}

pub fn expectations<T: Real>(s: &BadCavityState<T>, p: &ModelParams<T>) -> Expectations<T> {
    Expectations {
        site1_excited: s.c10e().norm_sqr(),
        total_excited: s.excited_population(),
        cavity: cavity_intensity(s, p),
    }
}

/// How the state is carried across a step without a jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Closed-form weak-field solution, re-anchored at every jump.
    Analytic,
    /// RK4 on the full bad-cavity equations.
    #[default]
    Rk4,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Analytic => "analytic",
            Backend::Rk4 => "rk4",
        })
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "analytic" => Ok(Backend::Analytic),
            "rk4" => Ok(Backend::Rk4),
            other => Err(format!(
                "unknown backend `{other}` (expected analytic or rk4)"
            )),
        }
    }
}

/// Independent random stream of one trajectory: a ChaCha8 generator keyed by
/// the global seed, with the trajectory id selecting the stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStreamSpec {
    pub seed: u64,
    pub trajectory_id: u64,
}

impl RngStreamSpec {
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trajectory_id);
        rng
    }
}

/// Runs one trajectory of `p.n_steps` steps starting from `|10g⟩`.
pub fn run_trajectory<T: Real>(
    p: &ModelParams<T>,
    backend: Backend,
    trajectory_id: u64,
) -> Result<Vec<JumpRecord>> {
    let rates = BadCavityRates::new(p)?;
    if p.n_sites != 2 || p.n_atoms != 1 {
        return Err(Error::InvalidParameter {
            field: "n_sites",
            reason: format!(
                "the jump engine covers one atom on two sites, got N={} L={}",
                p.n_atoms, p.n_sites
            ),
        });
    }
    if backend == Backend::Analytic && p.drive > T::lit(0.1) * p.gamma {
        log::warn!(
            "analytic backend outside the weak-field regime: Y = {} > 0.1 gamma",
            p.drive
        );
    }
    let mut rng = RngStreamSpec {
        seed: p.seed,
        trajectory_id,
    }
    .rng();
    let dt_f64 = p.dt.to_f64_lossy();
    let warn_at = T::lit(STEP_PROBABILITY_WARNING);
    let mut warned = false;

    let mut records = Vec::new();
    let mut state = BadCavityState::ground_site1();
    let mut anchor = state;
    let mut anchor_step = 0u64;

    for step in 0..p.n_steps {
        let probs = jump_probabilities(&state, p, p.dt);
        if !warned && probs.total() > warn_at {
            log::warn!(
                "per-step jump probability {} exceeds {STEP_PROBABILITY_WARNING}; consider a smaller dt",
                probs.total()
            );
            warned = true;
        }
        let u = T::lit(rng.random::<f64>());
        match select_jump(&probs, u)? {
            Some(channel) => {
                let (collapsed, _) = renormalize(&apply_collapse(channel, &state, p)?)?;
                records.push(JumpRecord {
                    trajectory_id,
                    time: step as f64 * dt_f64,
                    channel,
                });
                state = collapsed;
                anchor = collapsed;
                anchor_step = step + 1;
            }
            None => {
                let evolved = match backend {
                    Backend::Rk4 => {
                        rk4_step(|s: &BadCavityState<T>| deriv_bc2(s, &rates), &state, p.dt)
                    }
                    Backend::Analytic => {
                        let elapsed =
                            T::from_u64(step + 1 - anchor_step).expect("step count") * p.dt;
                        propagate_analytic(&anchor, elapsed, &rates)?
                    }
                };
                state = renormalize(&evolved)?.0;
            }
        }
    }
    Ok(records)
}

/// Runs the trajectories with ids in `ids` on the current rayon pool.
///
/// Each trajectory owns its random stream, so the output (concatenated in id
/// order) does not depend on the number of workers.
pub fn run_trajectories<T: Real>(
    p: &ModelParams<T>,
    backend: Backend,
    ids: Range<u64>,
) -> Result<Vec<JumpRecord>> {
    let per_id: Vec<Vec<JumpRecord>> = ids
        .into_par_iter()
        .map(|id| run_trajectory(p, backend, id))
        .collect::<Result<_>>()?;
    Ok(per_id.into_iter().flatten().collect())
}

/// Jump totals per channel.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ChannelCounts {
    pub gamma1: u64,
    pub gamma2: u64,
    pub kappa: u64,
    pub other: u64,
}

impl ChannelCounts {
    pub fn from_records(records: &[JumpRecord]) -> Self {
        let mut c = Self::default();
        for r in records {
            match r.channel {
                ChannelId::Gamma(1) => c.gamma1 += 1,
                ChannelId::Gamma(2) => c.gamma2 += 1,
                ChannelId::Kappa => c.kappa += 1,
                ChannelId::Gamma(_) => c.other += 1,
            }
        }
        c
    }

    pub fn total(&self) -> u64 {
        self.gamma1 + self.gamma2 + self.kappa + self.other
    }
}
