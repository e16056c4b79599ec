//! Physical parameters and the derived bad-cavity rates.
//!
//! All rates are in units of the spontaneous emission rate γ unless a caller
//! chooses otherwise, and ħ = 1.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Rates, lattice shape and integration settings for one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    /// Atom-cavity coupling g.
    pub g: T,
    /// Cavity field decay κ.
    pub kappa: T,
    /// Spontaneous emission γ.
    pub gamma: T,
    /// Cavity drive Y.
    pub drive: T,
    /// Tunneling rate J between neighbouring sites.
    pub tunneling: T,
    /// On-site interaction U.
    pub interaction: T,
    /// Integration step, units of 1/γ.
    pub dt: T,
    pub n_steps: u64,
    pub seed: u64,
    pub n_sites: usize,
    pub n_atoms: usize,
    pub drive_convention: DriveConvention,
}

/// How the cavity drive Y enters the atomic equations after the field is
/// eliminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DriveConvention {
    /// 𝒴 = gY/κ, the drive the eliminated field exerts on the atom.
    #[default]
    Eliminated,
    /// 𝒴 = Y, the drive as it appears in the closed-form weak-field
    /// solution. This is the operating point at which Y = 0.4, C = 1 yields
    /// about 10⁴ jumps per 10⁸ steps of dt = 10⁻³.
    Direct,
}

impl std::fmt::Display for DriveConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DriveConvention::Eliminated => "eliminated",
            DriveConvention::Direct => "direct",
        })
    }
}

impl std::str::FromStr for DriveConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eliminated" => Ok(DriveConvention::Eliminated),
            "direct" => Ok(DriveConvention::Direct),
            other => Err(format!(
                "unknown drive convention `{other}` (expected eliminated or direct)"
            )),
        }
    }
}

impl<T: Real> Default for ModelParams<T> {
    /// g = √10, κ = 10, γ = 1 (so C = 1), Y = 0.4, J = 1, dt = 1e-3.
    fn default() -> Self {
        Self {
            g: T::lit(10.0).sqrt(),
            kappa: T::lit(10.0),
            gamma: T::one(),
            drive: T::lit(0.4),
            tunneling: T::one(),
            interaction: T::zero(),
            dt: T::lit(1e-3),
            n_steps: 1_000_000,
            seed: 0,
            n_sites: 2,
            n_atoms: 1,
            drive_convention: DriveConvention::Eliminated,
        }
    }
}

/// Quantities obtained after eliminating the cavity field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<T> {
    /// C = g²/(κγ).
    pub cooperativity: T,
    /// Γ = (γ/2)(1 + 2C), the cavity-enhanced excited-state decay.
    pub decay: T,
    /// 𝒴, the drive seen by the atom once the field is eliminated: gY/κ,
    /// or Y under [`DriveConvention::Direct`].
    pub drive: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub severity: Severity,
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    fn error(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            field,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// Lists every violated invariant. Leaving the bad-cavity regime is reported
/// as a warning, everything else as an error.
pub fn validate_params<T: Real>(p: &ModelParams<T>) -> Vec<Violation> {
    let mut out = Vec::new();
    let nonneg = [("g", p.g), ("Y", p.drive), ("J", p.tunneling)];
    for (field, v) in nonneg {
        if !v.is_finite() || v < T::zero() {
            out.push(Violation::error(
                field,
                format!("must be finite and >= 0, got {v}"),
            ));
        }
    }
    // κ and γ divide into C and into the collapse operators.
    for (field, v) in [("kappa", p.kappa), ("gamma", p.gamma)] {
        if !v.is_finite() || v <= T::zero() {
            out.push(Violation::error(
                field,
                format!("must be finite and > 0, got {v}"),
            ));
        }
    }
    if !p.interaction.is_finite() {
        out.push(Violation::error("U", "must be finite"));
    }
    if !p.dt.is_finite() || p.dt <= T::zero() {
        out.push(Violation::error("dt", format!("must be > 0, got {}", p.dt)));
    }
    if p.n_sites < 1 {
        out.push(Violation::error("n_sites", "must be >= 1"));
    }
    if out.is_empty() {
        let fastest = p.g.max(p.gamma).max(p.drive).max(p.tunneling);
        if p.kappa < fastest {
            out.push(Violation {
                severity: Severity::Warning,
                field: "kappa",
                message: format!(
                    "bad-cavity regime violated: kappa = {} < max(g, gamma, Y, J) = {}",
                    p.kappa, fastest
                ),
            });
        }
    }
    out
}

/// Computes C, Γ and 𝒴, rejecting parameters with error-class violations.
pub fn derive_params<T: Real>(p: &ModelParams<T>) -> Result<DerivedParams<T>> {
    if let Some(v) = validate_params(p).into_iter().find(Violation::is_error) {
        return Err(Error::InvalidParameter {
            field: v.field,
            reason: v.message,
        });
    }
    let two = T::lit(2.0);
    let cooperativity = p.g * p.g / (p.kappa * p.gamma);
    Ok(DerivedParams {
        cooperativity,
        decay: p.gamma / two * (T::one() + two * cooperativity),
        drive: match p.drive_convention {
            DriveConvention::Eliminated => p.g * p.drive / p.kappa,
            DriveConvention::Direct => p.drive,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper() -> ModelParams<f64> {
        ModelParams::default()
    }

    #[test]
    fn paper_parameters_give_unit_cooperativity() {
        let d = derive_params(&paper()).unwrap();
        assert!((d.cooperativity - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_coupling() {
        let p = ModelParams { g: 0.0, ..paper() };
        let d = derive_params(&p).unwrap();
        assert_eq!(d.cooperativity, 0.0);
        assert_eq!(d.decay, 0.5);
        assert_eq!(d.drive, 0.0);
    }

    #[test]
    fn drive_and_decay_by_hand() {
        // C = 10/(10*1) = 1, Γ = 0.5*3, 𝒴 = √10*0.4/10 = 0.4/√10.
        let d = derive_params(&paper()).unwrap();
        assert!((d.decay - 1.5).abs() < 1e-14);
        assert!((d.drive - 0.4 / 10f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn defaults_validate_clean() {
        assert!(validate_params(&paper()).is_empty());
    }

    #[test]
    fn zero_dt_is_one_error() {
        let v = validate_params(&ModelParams { dt: 0.0, ..paper() });
        assert_eq!(v.len(), 1);
        assert!(v[0].is_error());
        assert_eq!(v[0].field, "dt");
        let err = derive_params(&ModelParams { dt: 0.0, ..paper() }).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { field: "dt", .. }));
    }

    #[test]
    fn good_cavity_is_a_warning() {
        let v = validate_params(&ModelParams {
            kappa: 1.0,
            g: 10.0,
            ..paper()
        });
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].severity, Severity::Warning);
        assert!(derive_params(&ModelParams {
            kappa: 1.0,
            g: 10.0,
            ..paper()
        })
        .is_ok());
    }

    #[test]
    fn negative_rate_names_field() {
        let err = derive_params(&ModelParams { g: -1.0, ..paper() }).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { field: "g", .. }));
    }

    #[test]
    fn decay_increases_with_coupling() {
        let mut last = 0.0;
        for i in 0..50 {
            let g = i as f64 * 0.1;
            let d = derive_params(&ModelParams { g, ..paper() }).unwrap();
            assert!(i == 0 || d.decay > last);
            last = d.decay;
        }
    }

    #[test]
    fn derive_is_bit_deterministic() {
        let a = derive_params(&paper()).unwrap();
        let b = derive_params(&paper()).unwrap();
        assert_eq!(a.decay.to_bits(), b.decay.to_bits());
        assert_eq!(a.drive.to_bits(), b.drive.to_bits());
    }

    #[test]
    fn direct_convention_uses_bare_drive() {
        let p = ModelParams {
            drive_convention: DriveConvention::Direct,
            ..paper()
        };
        let d = derive_params(&p).unwrap();
        assert_eq!(d.drive, 0.4);
        assert!((d.decay - 1.5).abs() < 1e-14);
        assert_eq!(
            "direct".parse::<DriveConvention>().unwrap(),
            DriveConvention::Direct
        );
        assert!("bare".parse::<DriveConvention>().is_err());
    }

    #[test]
    fn single_precision() {
        let d = derive_params(&ModelParams::<f32>::default()).unwrap();
        assert!((d.cooperativity - 1.0).abs() < 1e-6);
    }
}
