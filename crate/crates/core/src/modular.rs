//! Exact arithmetic in `Z/p^k`.
//!
//! Every residue carries its [`Modulus`]. Moduli are capped so that `p^(2k)`
//! fits in a `u64`, which keeps every product of two canonical
//! representatives exact without widening.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The ring `Z/p^k` for a prime `p` and level `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    p: u64,
    k: u32,
    m: u64,
}

impl Modulus {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidModulus("level k must be at least 1".into()));
        }
        let m = p
            .checked_pow(k)
            .ok_or_else(|| Error::InvalidModulus(format!("{p}^{k} overflows")))?;
        if m.checked_mul(m).is_none() {
            return Err(Error::InvalidModulus(format!(
                "{p}^{k} is too large: its square must fit in 64 bits"
            )));
        }
        Ok(Self { p, k, m })
    }

    /// Recovers `(p, k)` from a prime power `m = p^k`.
    pub fn from_prime_power(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(format!("{m} is not a prime power")));
        }
        let p = (2..=m)
            .find(|d| m % d == 0)
            .expect("m >= 2 has a smallest divisor");
        let mut rest = m;
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidModulus(format!("{m} is not a prime power")));
        }
        Self::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The modulus value `p^k`.
    pub fn value(&self) -> u64 {
        self.m
    }

    /// The residue field `Z/p`.
    pub fn base(&self) -> Self {
        Self {
            p: self.p,
            k: 1,
            m: self.p,
        }
    }

    /// The ring `Z/p^j` for `1 <= j`.
    pub fn with_level(&self, j: u32) -> Result<Self> {
        Self::new(self.p, j)
    }

    /// Canonical residue of a signed integer.
    pub fn reduce(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.m as i128) as u64
    }

    pub fn elem(&self, x: i64) -> ModInt {
        ModInt {
            value: self.reduce(x),
            modulus: *self,
        }
    }

    pub fn zero(&self) -> ModInt {
        ModInt {
            value: 0,
            modulus: *self,
        }
    }

    pub fn one(&self) -> ModInt {
        ModInt {
            value: 1 % self.m,
            modulus: *self,
        }
    }

    /// All residues `0..p^k` in increasing order.
    pub fn residues(&self) -> impl Iterator<Item = ModInt> + '_ {
        (0..self.m).map(move |value| ModInt {
            value,
            modulus: *self,
        })
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.m
    }

    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    pub(crate) fn signed_raw(&self, a: u64) -> i64 {
        if a > self.m / 2 {
            a as i64 - self.m as i64
        } else {
            a as i64
        }
    }

    pub(crate) fn inv_raw(&self, a: u64) -> Result<u64> {
        // extended Euclid on (a, m)
        let (mut r0, mut r1) = (self.m as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return Err(Error::NotAUnit {
                value: a,
                modulus: self.m,
            });
        }
        Ok(t0.rem_euclid(self.m as i128) as u64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "Z/{}", self.p)
        } else {
            write!(f, "Z/{}^{}", self.p, self.k)
        }
    }
}

/// A residue in `Z/p^k`, stored as its canonical representative in `[0, p^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModInt {
    value: u64,
    modulus: Modulus,
}

impl PartialOrd for Modulus {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Modulus {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.m.cmp(&other.m)
    }
}

impl ModInt {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        modulus.elem(value)
    }

    pub(crate) fn from_raw(value: u64, modulus: Modulus) -> Self {
        debug_assert!(value < modulus.value());
        Self { value, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Representative in `(-p^k/2, p^k/2]`, used for display only.
    pub fn signed(&self) -> i64 {
        self.modulus.signed_raw(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1 % self.modulus.value()
    }

    pub fn is_unit(&self) -> bool {
        self.value % self.modulus.p() != 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: other.modulus.value(),
            });
        }
        Ok(())
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(Self::from_raw(
            self.modulus.add_raw(self.value, rhs.value),
            self.modulus,
        ))
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(Self::from_raw(
            self.modulus.sub_raw(self.value, rhs.value),
            self.modulus,
        ))
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(Self::from_raw(
            self.modulus.mul_raw(self.value, rhs.value),
            self.modulus,
        ))
    }

    /// Multiplicative inverse; fails with [`Error::NotAUnit`] when `p` divides the value.
    pub fn inv(self) -> Result<Self> {
        Ok(Self::from_raw(
            self.modulus.inv_raw(self.value)?,
            self.modulus,
        ))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let m = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % m.value();
        while e > 0 {
            if e & 1 == 1 {
                acc = m.mul_raw(acc, base);
            }
            base = m.mul_raw(base, base);
            e >>= 1;
        }
        Self::from_raw(acc, m)
    }

    /// Scales by a machine integer.
    pub fn scale(self, c: i64) -> Self {
        self * self.modulus.elem(c)
    }

    /// Reduction to a lower level `Z/p^j`, `j <= k`.
    pub fn reduce_to(self, target: Modulus) -> Result<Self> {
        if target.p() != self.modulus.p() || target.k() > self.modulus.k() {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: target.value(),
            });
        }
        Ok(Self::from_raw(self.value % target.value(), target))
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator forms panic on mismatched moduli; the `try_*` forms report it.
impl Add for ModInt {
    type Output = ModInt;
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs)
            .expect("ModInt addition across different moduli")
    }
}

impl Sub for ModInt {
    type Output = ModInt;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs)
            .expect("ModInt subtraction across different moduli")
    }
}

impl Mul for ModInt {
    type Output = ModInt;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs)
            .expect("ModInt multiplication across different moduli")
    }
}

impl Neg for ModInt {
    type Output = ModInt;
    fn neg(self) -> Self {
        Self::from_raw(self.modulus.neg_raw(self.value), self.modulus)
    }
}

/// Whether the residue of `x` modulo `p` is a square (0 counts as a square).
///
/// Uses Euler's criterion; for `p = 2` every residue is a square.
pub fn is_square_mod_p(x: ModInt) -> bool {
    let field = x.modulus().base();
    let r = ModInt::from_raw(x.value() % field.value(), field);
    if r.is_zero() || field.p() == 2 {
        return true;
    }
    r.pow((field.p() - 1) / 2).is_one()
}

/// Smallest positive quadratic non-residue modulo a prime `p ≡ 1 (mod 4)`.
pub fn find_nonresidue(p: u64) -> Result<ModInt> {
    let field = Modulus::new(p, 1)?;
    if p % 4 != 1 {
        return Err(Error::WrongResidueClass { p });
    }
    let u = (2..p)
        .map(|x| field.elem(x as i64))
        .find(|&x| !is_square_mod_p(x))
        .expect("a prime p ≡ 1 mod 4 has non-residues");
    Ok(u)
}
