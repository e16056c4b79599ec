use core::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::scalar::Real;

/// Fixed-length vector of complex amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes<T, const N: usize>(pub [Complex<T>; N]);

impl<T: Real, const N: usize> Amplitudes<T, N> {
    pub fn zero() -> Self {
        Self([Complex::new(T::zero(), T::zero()); N])
    }

    /// Unit vector along `index`.
    pub fn basis(index: usize) -> Self {
        let mut s = Self::zero();
        s.0[index] = Complex::new(T::one(), T::zero());
        s
    }

    pub fn norm_sqr(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, k: T) -> Self {
        Self(self.0.map(|c| c.scale(k)))
    }

    /// Largest componentwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn len(&self) -> usize {
        N
    }

    pub fn is_empty(&self) -> bool {
        N == 0
    }
}

impl<T: Real, const N: usize> Default for Amplitudes<T, N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T, const N: usize> Index<usize> for Amplitudes<T, N> {
    type Output = Complex<T>;

    fn index(&self, i: usize) -> &Complex<T> {
        &self.0[i]
    }
}

impl<T, const N: usize> IndexMut<usize> for Amplitudes<T, N> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.0[i]
    }
}
