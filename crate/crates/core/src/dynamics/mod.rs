//! Amplitude equations for the implemented models and their integrators.

mod amplitudes;
mod appendix;
mod bad_cavity;
mod rk4;
mod weak_field;

pub use amplitudes::Amplitudes;
pub use appendix::{deriv_a36, AppendixOptions, AppendixState};
pub use bad_cavity::{
    deriv_bc2, deriv_bc2_weak, from_symmetric, propagate_analytic, to_symmetric, BadCavityRates,
    BadCavityState, SymmetricState,
};
pub use rk4::{rk4_step, LinearState};
pub use weak_field::{deriv_wf6, WeakFieldState};
