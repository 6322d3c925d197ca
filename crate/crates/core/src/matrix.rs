//! 3×3 matrices over `Z/p^k`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::modular::{ModInt, Modulus};

/// A 3×3 matrix over `Z/p^k`, stored row-major as canonical representatives.
///
/// Equality and hashing use the exact tuple of representatives, so the type
/// can key a hash index without collisions.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat3 {
    modulus: Modulus,
    e: [u64; 9],
}

impl Mat3 {
    pub fn zero(modulus: Modulus) -> Self {
        Self { modulus, e: [0; 9] }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Self::diag(modulus, [1, 1, 1])
    }

    pub fn diag(modulus: Modulus, d: [i64; 3]) -> Self {
        let mut m = Self::zero(modulus);
        for (i, &x) in d.iter().enumerate() {
            m.e[4 * i] = modulus.reduce(x);
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry.
    pub fn from_rows(modulus: Modulus, rows: [[i64; 3]; 3]) -> Self {
        let mut e = [0u64; 9];
        for i in 0..3 {
            for j in 0..3 {
                e[3 * i + j] = modulus.reduce(rows[i][j]);
            }
        }
        Self { modulus, e }
    }

    pub fn from_entries(entries: [ModInt; 9]) -> Result<Self> {
        let modulus = entries[0].modulus();
        let mut e = [0u64; 9];
        for (slot, x) in e.iter_mut().zip(entries.iter()) {
            if x.modulus() != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus.value(),
                    right: x.modulus().value(),
                });
            }
            *slot = x.value();
        }
        Ok(Self { modulus, e })
    }

    #[cfg(test)]
    pub(crate) fn from_raw(modulus: Modulus, e: [u64; 9]) -> Self {
        Self { modulus, e }
    }

    /// Matrix whose columns are the given raw vectors.
    pub(crate) fn from_raw_columns(modulus: Modulus, c: [[u64; 3]; 3]) -> Self {
        let mut e = [0u64; 9];
        for (j, col) in c.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                e[3 * i + j] = x;
            }
        }
        Self { modulus, e }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> ModInt {
        ModInt::from_raw(self.e[3 * i + j], self.modulus)
    }

    pub fn set(&mut self, i: usize, j: usize, x: ModInt) {
        assert_eq!(x.modulus(), self.modulus, "entry from a different ring");
        self.e[3 * i + j] = x.value();
    }

    pub(crate) fn raw(&self, i: usize, j: usize) -> u64 {
        self.e[3 * i + j]
    }

    pub fn raw_entries(&self) -> &[u64; 9] {
        &self.e
    }

    /// Canonical representatives as nested rows.
    pub fn rows(&self) -> [[u64; 3]; 3] {
        let mut r = [[0u64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = self.e[3 * i + j];
            }
        }
        r
    }

    /// Signed representatives in `(-p^k/2, p^k/2]`.
    pub fn signed_rows(&self) -> [[i64; 3]; 3] {
        let mut r = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = self.modulus.signed_raw(self.e[3 * i + j]);
            }
        }
        r
    }

    pub fn transpose(&self) -> Self {
        let mut e = [0u64; 9];
        for i in 0..3 {
            for j in 0..3 {
                e[3 * j + i] = self.e[3 * i + j];
            }
        }
        Self {
            modulus: self.modulus,
            e,
        }
    }

    pub fn det(&self) -> ModInt {
        let m = self.modulus;
        let a = |i: usize, j: usize| self.e[3 * i + j];
        let term = |x: u64, y: u64, z: u64| m.mul_raw(m.mul_raw(x, y), z);
        let pos = m.add_raw(
            m.add_raw(
                term(a(0, 0), a(1, 1), a(2, 2)),
                term(a(0, 1), a(1, 2), a(2, 0)),
            ),
            term(a(0, 2), a(1, 0), a(2, 1)),
        );
        let neg = m.add_raw(
            m.add_raw(
                term(a(0, 2), a(1, 1), a(2, 0)),
                term(a(0, 1), a(1, 0), a(2, 2)),
            ),
            term(a(0, 0), a(1, 2), a(2, 1)),
        );
        ModInt::from_raw(m.sub_raw(pos, neg), m)
    }

    /// Inverse via the adjugate; fails when the determinant is not a unit.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.modulus;
        let d_inv = m.inv_raw(self.det().value())?;
        let a = |i: usize, j: usize| self.e[3 * (i % 3) + (j % 3)];
        let mut e = [0u64; 9];
        for i in 0..3 {
            for j in 0..3 {
                // cofactor C_ji placed at (i, j)
                let c = m.sub_raw(
                    m.mul_raw(a(j + 1, i + 1), a(j + 2, i + 2)),
                    m.mul_raw(a(j + 1, i + 2), a(j + 2, i + 1)),
                );
                e[3 * i + j] = m.mul_raw(c, d_inv);
            }
        }
        Ok(Self { modulus: m, e })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus)
    }

    /// Entrywise reduction to a lower level of the same prime.
    pub fn reduce_to(&self, target: Modulus) -> Result<Self> {
        if target.p() != self.modulus.p() || target.k() > self.modulus.k() {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: target.value(),
            });
        }
        let mut e = self.e;
        for x in e.iter_mut() {
            *x %= target.value();
        }
        Ok(Self { modulus: target, e })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: rhs.modulus.value(),
            });
        }
        let m = self.modulus;
        let mut e = [0u64; 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0u64;
                for l in 0..3 {
                    acc = m.add_raw(acc, m.mul_raw(self.e[3 * i + l], rhs.e[3 * l + j]));
                }
                e[3 * i + j] = acc;
            }
        }
        Ok(Self { modulus: m, e })
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::identity(self.modulus);
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// The group commutator `self · rhs · self⁻¹ · rhs⁻¹`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * *rhs * self.inverse()? * rhs.inverse()?)
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        self.try_mul(&rhs)
            .expect("Mat3 product across different moduli")
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &Mat3) -> Mat3 {
        self.try_mul(rhs)
            .expect("Mat3 product across different moduli")
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mat3(mod {}: {:?})",
            self.modulus.value(),
            self.signed_rows()
        )
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.signed_rows();
        write!(
            f,
            "[{:?}, {:?}, {:?}] mod {}",
            r[0],
            r[1],
            r[2],
            self.modulus.value()
        )
    }
}
