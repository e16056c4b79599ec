//! `key = value` run configuration.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qtraj_core::correlations::{
    CorrelationKind, ALL_PAIRS, DEFAULT_BINS, DEFAULT_LOOKAHEAD, DEFAULT_STEADY_TAU_MIN,
    DEFAULT_TAU_MAX,
};
use qtraj_core::dynamics::AppendixOptions;
use qtraj_core::model::{validate_params, Severity};
use qtraj_core::trajectory::Backend;
use qtraj_core::Params;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Histogram construction settings.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramSettings {
    pub bins: usize,
    pub tau_max: f64,
    pub lookahead: usize,
    pub steady_norm: bool,
    pub steady_tau_min: f64,
}

impl Default for HistogramSettings {
    fn default() -> Self {
        Self {
            bins: DEFAULT_BINS,
            tau_max: DEFAULT_TAU_MAX,
            lookahead: DEFAULT_LOOKAHEAD,
            steady_norm: false,
            steady_tau_min: DEFAULT_STEADY_TAU_MIN,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    pub backend: Backend,
    pub n_trajectories: u64,
    /// Id of the first trajectory; a run covers `first_trajectory..first_trajectory + n_trajectories`.
    pub first_trajectory: u64,
    pub kind: CorrelationKind,
    pub histogram: HistogramSettings,
    /// Use the corrected 36-amplitude equations.
    pub corrections: bool,
    pub records: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: Params::default(),
            backend: Backend::default(),
            n_trajectories: 1,
            first_trajectory: 0,
            kind: CorrelationKind::site1_site1(),
            histogram: HistogramSettings::default(),
            corrections: false,
            records: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn trajectory_ids(&self) -> std::ops::Range<u64> {
        self.first_trajectory..self.first_trajectory + self.n_trajectories
    }

    pub fn appendix_options(&self) -> AppendixOptions {
        AppendixOptions {
            corrections: self.corrections,
        }
    }

    /// Checks model parameters and run settings. Warnings are logged.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut errors = Vec::new();
        for v in validate_params(&self.params) {
            match v.severity {
                Severity::Error => errors.push(format!("{}: {}", v.field, v.message)),
                Severity::Warning => log::warn!("{}: {}", v.field, v.message),
            }
        }
        if self.n_trajectories == 0 {
            errors.push("trajectories: must be >= 1".into());
        }
        if self
            .first_trajectory
            .checked_add(self.n_trajectories)
            .is_none()
        {
            errors.push("first_trajectory + trajectories overflows u64".into());
        }
        if self.histogram.bins == 0 {
            errors.push("bins: must be >= 1".into());
        }
        if !(self.histogram.tau_max > 0.0 && self.histogram.tau_max.is_finite()) {
            errors.push(format!(
                "tau_max: must be > 0, got {}",
                self.histogram.tau_max
            ));
        }
        if self.histogram.lookahead == 0 {
            errors.push("lookahead: must be >= 1".into());
        }
        if self.histogram.steady_norm && self.histogram.steady_tau_min >= self.histogram.tau_max {
            errors.push("steady_tau_min: must be below tau_max".into());
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(errors.join("; ")))
        }
    }
}

impl fmt::Display for RunConfig {
    /// Renders the configuration in the format [`parse_config`] reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "g = {}", p.g)?;
        writeln!(f, "kappa = {}", p.kappa)?;
        writeln!(f, "gamma = {}", p.gamma)?;
        writeln!(f, "Y = {}", p.drive)?;
        writeln!(f, "J = {}", p.tunneling)?;
        writeln!(f, "U = {}", p.interaction)?;
        writeln!(f, "dt = {}", p.dt)?;
        writeln!(f, "steps = {}", p.n_steps)?;
        writeln!(f, "seed = {}", p.seed)?;
        writeln!(f, "sites = {}", p.n_sites)?;
        writeln!(f, "atoms = {}", p.n_atoms)?;
        writeln!(f, "drive_convention = {}", p.drive_convention)?;
        writeln!(f, "backend = {}", self.backend)?;
        writeln!(f, "trajectories = {}", self.n_trajectories)?;
        writeln!(f, "first_trajectory = {}", self.first_trajectory)?;
        writeln!(f, "bins = {}", self.histogram.bins)?;
        writeln!(f, "tau_max = {}", self.histogram.tau_max)?;
        if self.histogram.lookahead == ALL_PAIRS {
            writeln!(f, "lookahead = all")?;
        } else {
            writeln!(f, "lookahead = {}", self.histogram.lookahead)?;
        }
        writeln!(f, "steady_norm = {}", self.histogram.steady_norm)?;
        writeln!(f, "steady_tau_min = {}", self.histogram.steady_tau_min)?;
        writeln!(f, "corrections = {}", self.corrections)
    }
}

fn value<T: FromStr>(raw: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    raw.parse::<T>()
        .map_err(|e| format!("cannot parse `{raw}`: {e}"))
}

fn flag(raw: &str) -> Result<bool, String> {
    match raw {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("expected true or false, got `{raw}`")),
    }
}

fn apply(cfg: &mut RunConfig, key: &str, raw: &str) -> Result<(), String> {
    let p = &mut cfg.params;
    let h = &mut cfg.histogram;
    match key {
        "g" => p.g = value(raw)?,
        "kappa" => p.kappa = value(raw)?,
        "gamma" => p.gamma = value(raw)?,
        "Y" | "drive" => p.drive = value(raw)?,
        "J" | "tunneling" => p.tunneling = value(raw)?,
        "U" | "interaction" => p.interaction = value(raw)?,
        "dt" => p.dt = value(raw)?,
        "steps" | "n_steps" => p.n_steps = value(raw)?,
        "seed" => p.seed = value(raw)?,
        "sites" | "n_sites" => p.n_sites = value(raw)?,
        "atoms" | "n_atoms" => p.n_atoms = value(raw)?,
        "drive_convention" => p.drive_convention = raw.parse()?,
        "backend" => cfg.backend = raw.parse()?,
        "trajectories" | "n_trajectories" => cfg.n_trajectories = value(raw)?,
        "first_trajectory" => cfg.first_trajectory = value(raw)?,
        "kind" => cfg.kind = raw.parse()?,
        "bins" => h.bins = value(raw)?,
        "tau_max" => h.tau_max = value(raw)?,
        "lookahead" => h.lookahead = if raw == "all" { ALL_PAIRS } else { value(raw)? },
        "steady_norm" => h.steady_norm = flag(raw)?,
        "steady_tau_min" => h.steady_tau_min = value(raw)?,
        "corrections" => cfg.corrections = flag(raw)?,
        "records" => cfg.records = Some(PathBuf::from(raw)),
        "out" => cfg.out = Some(PathBuf::from(raw)),
        _ => return Err(format!("unknown key `{key}`")),
    }
    Ok(())
}

/// Parses `key = value` lines. `#` starts a comment; missing keys keep their
/// defaults; unknown or repeated keys are errors.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut seen = std::collections::HashMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| ConfigError::Line { line, message };
        let (key, raw) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
        let (key, raw) = (key.trim(), raw.trim());
        if key.is_empty() {
            return Err(err("missing key".into()));
        }
        if raw.is_empty() {
            return Err(err(format!("missing value for `{key}`")));
        }
        apply(&mut cfg, key, raw).map_err(err)?;
        if let Some(first) = seen.insert(key.to_string(), line) {
            return Err(err(format!("`{key}` already set on line {first}")));
        }
    }
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig, crate::CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| crate::CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text).map_err(crate::CliError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        let d = qtraj_core::model::derive_params(&cfg.params).unwrap();
        assert!((d.cooperativity - 1.0).abs() < 1e-12);
        assert_eq!(cfg.params.tunneling, 1.0);
        assert_eq!(cfg.params.dt, 1e-3);
    }

    #[test]
    fn override_one_key() {
        let cfg = parse_config("J = 5").unwrap();
        assert_eq!(cfg.params.tunneling, 5.0);
        let expect = RunConfig {
            params: Params {
                tunneling: 5.0,
                ..Params::default()
            },
            ..RunConfig::default()
        };
        assert_eq!(cfg, expect);
    }

    #[test]
    fn unknown_key_names_line() {
        let err = parse_config("Jay = 5").unwrap_err();
        assert_eq!(
            err,
            ConfigError::Line {
                line: 1,
                message: "unknown key `Jay`".into()
            }
        );
        assert!(err.to_string().starts_with("line 1:"));

        let err = parse_config("# header\n\nJ = 2\nbogus = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::Line { line: 4, .. }));
    }

    #[test]
    fn comments_and_whitespace() {
        let cfg =
            parse_config("  # run\nY=0.1   # weak\n\tbackend = analytic\nkind = gany\n").unwrap();
        assert_eq!(cfg.params.drive, 0.1);
        assert_eq!(cfg.backend, Backend::Analytic);
        assert_eq!(cfg.kind, CorrelationKind::gamma_any());
    }

    #[test]
    fn bad_values_name_line() {
        for text in [
            "dt = fast",
            "J",
            "= 3",
            "steady_norm = maybe",
            "kind = g3g3",
            "steps = -1",
        ] {
            let err = parse_config(&format!("seed = 1\n{text}")).unwrap_err();
            assert!(
                matches!(err, ConfigError::Line { line: 2, .. }),
                "{text}: {err}"
            );
        }
    }

    #[test]
    fn repeated_key_rejected() {
        let err = parse_config("J = 1\nJ = 2").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn display_round_trips() {
        let cfg = parse_config(
            "J = 2.5\nY = 0.1\nsteps = 77\nlookahead = all\nsteady_norm = true\ncorrections = yes\ndrive_convention = direct",
        )
        .unwrap();
        assert_eq!(parse_config(&cfg.to_string()).unwrap(), cfg);
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let cfg = parse_config("trajectories = 0").unwrap();
        assert!(cfg.validate().is_err());
        let cfg = parse_config("kappa = -1").unwrap();
        assert!(cfg.validate().unwrap_err().to_string().contains("kappa"));
        let cfg = parse_config("steady_norm = true\ntau_max = 1").unwrap();
        assert!(cfg.validate().is_err());
    }
}
