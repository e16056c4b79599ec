//! Quantum-trajectory simulation of a two-level atom tunneling between two
//! optical-lattice sites inside a driven, lossy cavity in the bad-cavity
//! limit.
//!
//! The numerics are generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix the usual double-precision types.

pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod scalar;
pub mod statespace;
pub mod theory;
pub mod trajectory;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Params = model::ModelParams<f64>;
pub type ParamsF32 = model::ModelParams<f32>;
pub type Derived = model::DerivedParams<f64>;
pub type StateBC2 = dynamics::BadCavityState<f64>;
pub type StateBC2F32 = dynamics::BadCavityState<f32>;
pub type SymmetricBC2 = dynamics::SymmetricState<f64>;
pub type StateWF6 = dynamics::WeakFieldState<f64>;
pub type StateA36 = dynamics::AppendixState<f64>;
pub type Rates = dynamics::BadCavityRates<f64>;
pub type TheoryCurves = theory::Theory<f64>;
