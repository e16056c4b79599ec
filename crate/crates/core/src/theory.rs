//! Closed-form reference curves for the correlation functions, and the
//! light-shift lattice formulas.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{derive_params, ModelParams};
use crate::scalar::Real;

/// Normalized g²(τ) curves for the two-site bad-cavity model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theory<T> {
    pub tunneling: T,
    pub decay: T,
    pub cooperativity: T,
}

impl<T: Real> Theory<T> {
    pub fn new(p: &ModelParams<T>) -> Result<Self> {
        let d = derive_params(p)?;
        Ok(Self {
            tunneling: p.tunneling,
            decay: d.decay,
            cooperativity: d.cooperativity,
        })
    }

    /// (e^{−Γτ} − 1)²
    fn rise(&self, tau: T) -> T {
        let r = (-self.decay * tau).exp_m1();
        r * r
    }

    /// Site-resolved fluorescence correlation, clock started by a photon from
    /// `start` and stopped by one from `stop`:
    ///
    /// | start → stop | curve |
    /// |---|---|
    /// | 1 → 1 | 2(e^{−Γτ} − 1)² cos²(Jτ) |
    /// | 1 → 2 | 2(e^{−Γτ} − 1)² sin²(Jτ) |
    /// | 2 → 2 | 2(e^{−Γτ} − 1)² sin²(Jτ) |
    /// | 2 → 1 | 2(e^{−Γτ} − 1)² cos²(Jτ) |
    ///
    /// The site-2 rows are the tabulated forms, obtained by swapping sine and
    /// cosine in the site-1 rows.
    pub fn g2_f_site(&self, start: u8, stop: u8, tau: T) -> Result<T> {
        let (sin, cos) = (self.tunneling * tau).sin_cos();
        let osc = match (start, stop) {
            (1, 1) | (2, 1) => cos * cos,
            (1, 2) | (2, 2) => sin * sin,
            _ => {
                return Err(Error::OutOfRange(format!(
                    "site pair ({start}, {stop}) outside the two-site model"
                )))
            }
        };
        Ok(T::lit(2.0) * self.rise(tau) * osc)
    }

    /// Fluorescence from either site: (e^{−Γτ} − 1)².
    pub fn g2_gamma_any(&self, tau: T) -> T {
        self.rise(tau)
    }

    /// Transmission: (1 − 4C² e^{−(γ/2)(1+2C)τ})², valid for g/κ ≪ 1.
    pub fn g2_kappa(&self, tau: T) -> T {
        let c = self.cooperativity;
        let v = T::one() - T::lit(4.0) * c * c * (-self.decay * tau).exp();
        v * v
    }

    pub fn eval(&self, curve: Curve, tau: T) -> T {
        match curve {
            Curve::Site { start, stop } => self
                .g2_f_site(start, stop, tau)
                .expect("Curve::Site only holds valid sites"),
            Curve::GammaAny => self.g2_gamma_any(tau),
            Curve::Kappa => self.g2_kappa(tau),
        }
    }
}

/// Named theory curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    Site { start: u8, stop: u8 },
    GammaAny,
    Kappa,
}

impl FromStr for Curve {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let site = |start, stop| Ok(Curve::Site { start, stop });
        match s {
            "g2_f_11" => site(1, 1),
            "g2_f_12" => site(1, 2),
            "g2_f_22" => site(2, 2),
            "g2_f_21" => site(2, 1),
            "g2_gamma" => Ok(Curve::GammaAny),
            "g2_kappa" => Ok(Curve::Kappa),
            other => Err(format!(
                "unknown curve `{other}` (expected g2_f_11, g2_f_12, g2_f_22, g2_f_21, g2_gamma or g2_kappa)"
            )),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Site { start, stop } => write!(f, "g2_f_{start}{stop}"),
            Curve::GammaAny => f.write_str("g2_gamma"),
            Curve::Kappa => f.write_str("g2_kappa"),
        }
    }
}

/// Far-detuned laser forming the optical lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightShiftParams<T> {
    /// Δ = ω − ω₀
    pub detuning: T,
    /// Peak Rabi rate Ω₀.
    pub rabi: T,
    /// Lattice wavenumber k.
    pub wavenumber: T,
    /// Lattice depth V₀.
    pub depth: T,
}

/// Dressed energies ±(Δ/2 + Ω₀²/(4Δ)) in the dispersive limit (ħ = 1).
pub fn light_shift_energy<T: Real>(lp: &LightShiftParams<T>) -> Result<(T, T)> {
    if lp.detuning == T::zero() {
        return Err(Error::ZeroDetuning);
    }
    let e = lp.detuning / T::lit(2.0) + lp.rabi * lp.rabi / (T::lit(4.0) * lp.detuning);
    Ok((e, -e))
}

/// V₀ sin²(kz)
pub fn lattice_potential<T: Real>(z: T, lp: &LightShiftParams<T>) -> T {
    let s = (lp.wavenumber * z).sin();
    lp.depth * s * s
}
