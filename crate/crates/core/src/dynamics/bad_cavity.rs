//! One atom on two sites with the cavity field eliminated.
//!
//! Amplitude order is `(C10g, C01g, C10e, C01e)`: the atom on site 1 or
//! site 2, in its ground or excited level.

use num_complex::Complex;

use super::Amplitudes;
use crate::error::{Error, Result};
use crate::model::{derive_params, DerivedParams, ModelParams};
use crate::scalar::Real;

pub type BadCavityState<T> = Amplitudes<T, 4>;

impl<T: Real> BadCavityState<T> {
    pub const SITE1_GROUND: usize = 0;
    pub const SITE2_GROUND: usize = 1;
    pub const SITE1_EXCITED: usize = 2;
    pub const SITE2_EXCITED: usize = 3;

    pub fn new(c10g: Complex<T>, c01g: Complex<T>, c10e: Complex<T>, c01e: Complex<T>) -> Self {
        Self([c10g, c01g, c10e, c01e])
    }

    /// Atom in the ground level of site 1.
    pub fn ground_site1() -> Self {
        Self::basis(Self::SITE1_GROUND)
    }

    pub fn c10g(&self) -> Complex<T> {
        self.0[0]
    }
    pub fn c01g(&self) -> Complex<T> {
        self.0[1]
    }
    pub fn c10e(&self) -> Complex<T> {
        self.0[2]
    }
    pub fn c01e(&self) -> Complex<T> {
        self.0[3]
    }

    /// |C10e|² + |C01e|²
    pub fn excited_population(&self) -> T {
        self.0[2].norm_sqr() + self.0[3].norm_sqr()
    }
}

/// Sum and difference combinations `D± = (C_site1 ± C_site2)/√2` per level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricState<T> {
    pub plus_ground: Complex<T>,
    pub minus_ground: Complex<T>,
    pub plus_excited: Complex<T>,
    pub minus_excited: Complex<T>,
}

pub fn to_symmetric<T: Real>(s: &BadCavityState<T>) -> SymmetricState<T> {
    let r = T::FRAC_1_SQRT_2();
    SymmetricState {
        plus_ground: (s.c10g() + s.c01g()).scale(r),
        minus_ground: (s.c10g() - s.c01g()).scale(r),
        plus_excited: (s.c10e() + s.c01e()).scale(r),
        minus_excited: (s.c10e() - s.c01e()).scale(r),
    }
}

pub fn from_symmetric<T: Real>(d: &SymmetricState<T>) -> BadCavityState<T> {
    let r = T::FRAC_1_SQRT_2();
    BadCavityState::new(
        (d.plus_ground + d.minus_ground).scale(r),
        (d.plus_ground - d.minus_ground).scale(r),
        (d.plus_excited + d.minus_excited).scale(r),
        (d.plus_excited - d.minus_excited).scale(r),
    )
}

/// Rates entering the two-site bad-cavity equations, precomputed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BadCavityRates<T> {
    pub tunneling: T,
    /// 𝒴 = gY/κ
    pub drive: T,
    /// Γ = (γ/2)(1 + 2C)
    pub decay: T,
}

impl<T: Real> BadCavityRates<T> {
    pub fn new(p: &ModelParams<T>) -> Result<Self> {
        Ok(Self::from_derived(p, &derive_params(p)?))
    }

    pub fn from_derived(p: &ModelParams<T>, d: &DerivedParams<T>) -> Self {
        Self {
            tunneling: p.tunneling,
            drive: d.drive,
            decay: d.decay,
        }
    }
}

/// Full two-site equations:
///
/// ```text
/// Ċ10g = iJ C01g + 𝒴 C10e
/// Ċ01g = iJ C10g + 𝒴 C01e
/// Ċ10e = iJ C01e − 𝒴 C10g − Γ C10e
/// Ċ01e = iJ C10e − 𝒴 C01g − Γ C01e
/// ```
pub fn deriv_bc2<T: Real>(s: &BadCavityState<T>, r: &BadCavityRates<T>) -> BadCavityState<T> {
    let ij = Complex::new(T::zero(), r.tunneling);
    let [g1, g2, e1, e2] = s.0;
    BadCavityState::new(
        ij * g2 + e1.scale(r.drive),
        ij * g1 + e2.scale(r.drive),
        ij * e2 - g1.scale(r.drive) - e1.scale(r.decay),
        ij * e1 - g2.scale(r.drive) - e2.scale(r.decay),
    )
}

/// Weak-field truncation of [`deriv_bc2`]: the ground amplitudes are order
/// one and the excited ones order 𝒴, so the drive term feeding back into the
/// ground rows is dropped. This is the system [`propagate_analytic`] solves.
pub fn deriv_bc2_weak<T: Real>(s: &BadCavityState<T>, r: &BadCavityRates<T>) -> BadCavityState<T> {
    let ij = Complex::new(T::zero(), r.tunneling);
    let [g1, g2, e1, e2] = s.0;
    BadCavityState::new(
        ij * g2,
        ij * g1,
        ij * e2 - g1.scale(r.drive) - e1.scale(r.decay),
        ij * e1 - g2.scale(r.drive) - e2.scale(r.decay),
    )
}

/// Closed-form weak-field solution from an arbitrary initial state.
///
/// In the symmetric basis each pair decouples:
/// `D±g(t) = D±g(0) e^{±iJt}` and
/// `D±e(t) = [(𝒴 D±g(0)/Γ)(e^{−Γt} − 1) + D±e(0) e^{−Γt}] e^{±iJt}`.
pub fn propagate_analytic<T: Real>(
    s0: &BadCavityState<T>,
    t: T,
    r: &BadCavityRates<T>,
) -> Result<BadCavityState<T>> {
    if t < T::zero() || t.is_nan() {
        return Err(Error::NegativeTime(t.to_f64_lossy()));
    }
    if t == T::zero() {
        return Ok(*s0);
    }
    let d0 = to_symmetric(s0);
    let damp = (-r.decay * t).exp();
    // (e^{−Γt} − 1)/Γ, written with exp_m1 for accuracy at small Γt.
    let rise = if r.decay > T::zero() {
        (-r.decay * t).exp_m1() / r.decay
    } else {
        -t
    };
    let forward = Complex::from_polar(T::one(), r.tunneling * t);
    let backward = forward.conj();

    let excited = |ground0: Complex<T>, excited0: Complex<T>| {
        ground0.scale(r.drive * rise) + excited0.scale(damp)
    };
    let d = SymmetricState {
        plus_ground: d0.plus_ground * forward,
        minus_ground: d0.minus_ground * backward,
        plus_excited: excited(d0.plus_ground, d0.plus_excited) * forward,
        minus_excited: excited(d0.minus_ground, d0.minus_excited) * backward,
    };
    Ok(from_symmetric(&d))
}
