//! Two bosonic atoms on three sites in the weak-field cavity model
//! (36 amplitudes, indexed by [`crate::statespace::appendix_index`]).
//!
//! The equations are evaluated exactly as tabulated by default, including
//! entries that break the hopping symmetry. [`AppendixOptions::corrections`]
//! switches on the symmetry-restoring fixes:
//!
//! * rows for the `(2,0,0)` configuration hop with `√2` like `(0,0,2)`;
//! * rows for `(0,1,1)` hop from the neighbouring `(1,0,1)` rather than from
//!   `(1,1,0)`, mirroring the `(1,1,0)` rows;
//! * the first-excited `⁰C011^{1e}` row couples to `¹C011^g`, not `¹C011^{1e}`;
//! * the doubly-excited `(1,1,0)`/`(0,1,1)` rows hop into `⁰C020^{2e}`, not
//!   `⁰C020^{1e}`.
//!
//! The `+Y ²C^g − 2g ²C^g` terms of the `¹C^{1e}` rows are kept as tabulated
//! in both modes; their intended form is not recoverable from the table.

use num_complex::Complex;

use super::Amplitudes;
use crate::model::ModelParams;
use crate::scalar::Real;
use crate::statespace::APPENDIX_DIM;

pub type AppendixState<T> = Amplitudes<T, APPENDIX_DIM>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AppendixOptions {
    pub corrections: bool,
}

// Configuration positions in enumerate_configs(2, 3) order.
const P200: usize = 0;
const P110: usize = 1;
const P101: usize = 2;
const P020: usize = 3;
const P011: usize = 4;
const P002: usize = 5;

/// Start of the six-amplitude block with `photons` photons and `excited`
/// excited atoms.
const fn block(photons: usize, excited: usize) -> usize {
    let sector = photons + excited;
    6 * sector * (sector + 1) / 2 + (sector - photons) * 6
}

type Block<T> = [Complex<T>; 6];

fn read<T: Real>(s: &AppendixState<T>, photons: usize, excited: usize) -> Block<T> {
    let b = block(photons, excited);
    core::array::from_fn(|i| s.0[b + i])
}

/// Tunneling plus on-site interaction inside one block. `c020` replaces the
/// block's own `(0,2,0)` amplitude in the `(1,1,0)` and `(0,1,1)` rows.
fn hop<T: Real>(a: &Block<T>, c020: Complex<T>, j: T, u: T, corrections: bool) -> Block<T> {
    let ij = Complex::new(T::zero(), j);
    let minus_iu = Complex::new(T::zero(), -u);
    let r2 = T::SQRT_2();
    let into_200 = if corrections {
        a[P110].scale(r2)
    } else {
        a[P110]
    };
    let mut out = [Complex::new(T::zero(), T::zero()); 6];
    out[P101] = ij * (a[P110] + a[P011]);
    out[P110] = ij * (a[P101] + a[P200].scale(r2) + c020.scale(r2));
    let into_011 = if corrections { a[P101] } else { a[P110] };
    out[P011] = ij * (into_011 + a[P002].scale(r2) + c020.scale(r2));
    out[P200] = ij * into_200 + minus_iu * a[P200];
    out[P020] = ij * (a[P110] + a[P011]).scale(r2) + minus_iu * a[P020];
    out[P002] = ij * a[P011].scale(r2) + minus_iu * a[P002];
    out
}

/// Time derivative of all 36 amplitudes (ħ = 1).
pub fn deriv_a36<T: Real>(
    s: &AppendixState<T>,
    p: &ModelParams<T>,
    opts: AppendixOptions,
) -> AppendixState<T> {
    let fix = opts.corrections;
    let (j, u, g, y, kappa, gamma) = (p.tunneling, p.interaction, p.g, p.drive, p.kappa, p.gamma);
    let two = T::lit(2.0);
    let r2 = T::SQRT_2();
    let half_gamma = gamma / two;

    let g0 = read(s, 0, 0);
    let g1 = read(s, 1, 0);
    let e1 = read(s, 0, 1);
    let g2 = read(s, 2, 0);
    let e1p = read(s, 1, 1);
    let e2 = read(s, 0, 2);

    let mut out = AppendixState::zero();
    let mut write = |photons: usize, excited: usize, rows: Block<T>| {
        let b = block(photons, excited);
        out.0[b..b + 6].copy_from_slice(&rows);
    };

    write(0, 0, hop(&g0, g0[P020], j, u, fix));

    let mut rows = hop(&g1, g1[P020], j, u, fix);
    for k in 0..6 {
        rows[k] += g0[k].scale(y) + e1[k].scale(g * r2) - g1[k].scale(kappa);
    }
    write(1, 0, rows);

    let mut rows = hop(&e1, e1[P020], j, u, fix);
    for k in 0..6 {
        let partner = if k == P011 && !fix { e1p[k] } else { g1[k] };
        rows[k] += -partner.scale(g * r2) - e1[k].scale(half_gamma);
    }
    write(0, 1, rows);

    let mut rows = hop(&g2, g2[P020], j, u, fix);
    for k in 0..6 {
        rows[k] += g1[k].scale(y * r2) + e1p[k].scale(two * g) - g2[k].scale(two * kappa);
    }
    write(2, 0, rows);

    let mut rows = hop(&e1p, e1p[P020], j, u, fix);
    for k in 0..6 {
        rows[k] += g2[k].scale(y) - g2[k].scale(two * g) - e1p[k].scale(kappa + half_gamma);
    }
    write(1, 1, rows);

    let c020 = if fix { e2[P020] } else { e1[P020] };
    let mut rows = hop(&e2, c020, j, u, fix);
    for k in 0..6 {
        rows[k] += -e1p[k].scale(g * r2) - e2[k].scale(gamma);
    }
    write(0, 2, rows);

    out
}
