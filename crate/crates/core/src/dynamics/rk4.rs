use num_complex::Complex;

use super::Amplitudes;
use crate::scalar::Real;

/// State types an explicit Runge-Kutta step can combine linearly.
pub trait LinearState<T>: Sized {
    /// `self + k * other`
    fn add_scaled(&self, other: &Self, k: T) -> Self;
}

impl<T: Real> LinearState<T> for T {
    fn add_scaled(&self, other: &Self, k: T) -> Self {
        *self + k * *other
    }
}

impl<T: Real> LinearState<T> for Complex<T> {
    fn add_scaled(&self, other: &Self, k: T) -> Self {
        self + other.scale(k)
    }
}

impl<T: Real, const N: usize> LinearState<T> for Amplitudes<T, N> {
    fn add_scaled(&self, other: &Self, k: T) -> Self {
        let mut out = *self;
        for (o, d) in out.0.iter_mut().zip(other.0.iter()) {
            *o += d.scale(k);
        }
        out
    }
}

/// One classical fourth-order Runge-Kutta step of the autonomous system
/// `ṡ = f(s)`. No renormalization happens here.
pub fn rk4_step<T, S, F>(f: F, s: &S, dt: T) -> S
where
    T: Real,
    S: LinearState<T>,
    F: Fn(&S) -> S,
{
    let half = dt * T::lit(0.5);
    let k1 = f(s);
    let k2 = f(&s.add_scaled(&k1, half));
    let k3 = f(&s.add_scaled(&k2, half));
    let k4 = f(&s.add_scaled(&k3, dt));
    let sixth = dt / T::lit(6.0);
    let third = dt / T::lit(3.0);
    s.add_scaled(&k1, sixth)
        .add_scaled(&k2, third)
        .add_scaled(&k3, third)
        .add_scaled(&k4, sixth)
}
