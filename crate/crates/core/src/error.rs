use thiserror::Error;

use crate::trajectory::ChannelId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("state-count overflow for N={n_atoms}, L={n_sites}")]
    CountOverflow { n_atoms: u64, n_sites: u64 },

    #[error("index component out of range: {0}")]
    OutOfRange(String),

    #[error("negative propagation time {0}")]
    NegativeTime(f64),

    #[error("total jump probability {0} per step is >= 1; reduce dt")]
    ProbabilityOverflow(f64),

    #[error("collapse through {0} produced a zero vector")]
    ImpossibleJump(ChannelId),

    #[error("cannot renormalize a zero vector")]
    ZeroNorm,

    #[error("no histogram bins beyond tau_min = {tau_min} (tau_max = {tau_max})")]
    NoSteadyStateBins { tau_min: f64, tau_max: f64 },

    #[error("histogram setting invalid: {0}")]
    InvalidHistogram(String),

    #[error("light-shift formula needs a nonzero detuning")]
    ZeroDetuning,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
