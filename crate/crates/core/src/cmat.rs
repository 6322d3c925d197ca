//! 2×2 complex matrices, generic over the real scalar.

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::{Float, FloatConst};

/// Real scalar usable for representation matrices (`f32`, `f64`).
pub trait Real: Float + FloatConst + Debug + Send + Sync + 'static {}

impl<T: Float + FloatConst + Debug + Send + Sync + 'static> Real for T {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2<T> {
    pub e: [[Complex<T>; 2]; 2],
}

impl<T: Real> CMat2<T> {
    pub fn new(e: [[Complex<T>; 2]; 2]) -> Self {
        Self { e }
    }

    pub fn from_real(r: [[T; 2]; 2]) -> Self {
        let c = |x: T| Complex::new(x, T::zero());
        Self {
            e: [[c(r[0][0]), c(r[0][1])], [c(r[1][0]), c(r[1][1])]],
        }
    }

    pub fn zero() -> Self {
        Self::from_real([[T::zero(); 2]; 2])
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one())
    }

    pub fn diag(a: T, b: T) -> Self {
        Self::from_real([[a, T::zero()], [T::zero(), b]])
    }

    /// Counter-clockwise rotation of the real plane by `theta`.
    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self::from_real([[c, -s], [s, c]])
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let mut e = self.e;
        for x in e.iter_mut().flatten() {
            *x = *x * k;
        }
        Self { e }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let e = self.e;
        Self {
            e: [
                [e[0][0].conj(), e[1][0].conj()],
                [e[0][1].conj(), e[1][1].conj()],
            ],
        }
    }

    pub fn det(&self) -> Complex<T> {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn trace(&self) -> Complex<T> {
        self.e[0][0] + self.e[1][1]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() <= T::epsilon() {
            return None;
        }
        let e = self.e;
        Some(
            Self {
                e: [[e[1][1], -e[0][1]], [-e[1][0], e[0][0]]],
            }
            .scale(d.inv()),
        )
    }

    /// Entrywise max modulus.
    pub fn max_abs(&self) -> T {
        self.e
            .iter()
            .flatten()
            .map(|x| x.norm())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other) < tol
    }

    pub fn is_identity(&self, tol: T) -> bool {
        self.approx_eq(&Self::identity(), tol)
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        (self.adjoint() * *self).is_identity(tol)
    }

    /// Principal square root of a Hermitian positive-definite matrix:
    /// `(P + √det·I) / √(tr P + 2√det)`.
    pub fn sqrt_hermitian_pd(&self) -> Self {
        let sd = self.det().re.sqrt();
        let t = (self.trace().re + sd + sd).sqrt();
        (*self + Self::identity().scale(Complex::new(sd, T::zero())))
            .scale(Complex::new(t.recip(), T::zero()))
    }

    /// Row-major `[re, im]` pairs.
    pub fn to_pairs(&self) -> [[f64; 2]; 4] {
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let mut out = [[0.0; 2]; 4];
        for (slot, x) in out.iter_mut().zip(self.e.iter().flatten()) {
            *slot = [f(x.re), f(x.im)];
        }
        out
    }
}

impl<T: Real> Mul for CMat2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.e, rhs.e);
        let mut e = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                e[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { e }
    }
}

impl<T: Real> Add for CMat2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut e = self.e;
        for i in 0..2 {
            for j in 0..2 {
                e[i][j] = e[i][j] + rhs.e[i][j];
            }
        }
        Self { e }
    }
}

impl<T: Real> Sub for CMat2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(Complex::new(-T::one(), T::zero()))
    }
}
