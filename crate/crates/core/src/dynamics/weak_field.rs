//! Weak-field trajectory model with the cavity field kept, truncated at two
//! excitations. Amplitudes `C_nm` carry n photons and m excited atoms, stored
//! as `(C00, C10, C01, C20, C11, C02)`.

use num_complex::Complex;

use super::Amplitudes;
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::scalar::Real;

pub type WeakFieldState<T> = Amplitudes<T, 6>;

impl<T: Real> WeakFieldState<T> {
    pub const C00: usize = 0;
    pub const C10: usize = 1;
    pub const C01: usize = 2;
    pub const C20: usize = 3;
    pub const C11: usize = 4;
    pub const C02: usize = 5;

    /// Excitation number n + m of each slot.
    pub const GRADING: [u32; 6] = [0, 1, 1, 2, 2, 2];
}

/// Rescaled weak-field equations for N atoms:
///
/// ```text
/// Ċ00 = 0
/// Ċ10 = Y + g√N C11 − κ C10
/// Ċ01 = −g√N C00 − (γ/2) C01
/// Ċ20 = √2 Y C10 + g√2√N C11 − 2κ C20
/// Ċ11 = Y C01 − g√2√N C01 + g√2√(N−1) C02 − (κ + γ/2) C11
/// Ċ02 = −g√2√(N−1) C11 − γ C02
/// ```
///
/// The constant `Y` in Ċ10 is the drive acting on the order-one ground
/// amplitude.
pub fn deriv_wf6<T: Real>(
    s: &WeakFieldState<T>,
    p: &ModelParams<T>,
    n_atoms: usize,
) -> Result<WeakFieldState<T>> {
    if n_atoms == 0 {
        return Err(Error::InvalidParameter {
            field: "n_atoms",
            reason: "weak-field equations need at least one atom".into(),
        });
    }
    let two = T::lit(2.0);
    let sqrt2 = T::SQRT_2();
    let n = T::from_usize(n_atoms).expect("atom count fits the scalar type");
    let root_n = n.sqrt();
    let root_n1 = (n - T::one()).sqrt();
    let (g, y, kappa, half_gamma) = (p.g, p.drive, p.kappa, p.gamma / two);
    let [c00, c10, c01, c20, c11, c02] = s.0;
    Ok(Amplitudes([
        Complex::new(T::zero(), T::zero()),
        Complex::new(y, T::zero()) + c11.scale(g * root_n) - c10.scale(kappa),
        -c00.scale(g * root_n) - c01.scale(half_gamma),
        c10.scale(sqrt2 * y) + c11.scale(g * sqrt2 * root_n) - c20.scale(two * kappa),
        c01.scale(y) - c01.scale(g * sqrt2 * root_n) + c02.scale(g * sqrt2 * root_n1)
            - c11.scale(kappa + half_gamma),
        -c11.scale(g * sqrt2 * root_n1) - c02.scale(p.gamma),
    ]))
}
