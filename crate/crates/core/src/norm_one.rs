//! The cyclic group of solutions of `a² − v·b² ≡ 1 (mod p)`.
//!
//! A pair `(a, b)` stands for `a + i·b` with `i² = v`, so the product law is
//! complex-style multiplication and the group is cyclic of order `p + 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::form::make_form;
use crate::modular::ModInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormOnePair {
    pub a: ModInt,
    pub b: ModInt,
    v: ModInt,
}

impl NormOnePair {
    /// Checks `a² − v·b² ≡ 1`.
    pub fn new(a: ModInt, b: ModInt, v: ModInt) -> Result<Self> {
        if a.modulus() != b.modulus() || a.modulus() != v.modulus() {
            return Err(Error::ModulusMismatch {
                left: a.modulus().value(),
                right: b.modulus().value(),
            });
        }
        if !(a * a - v * b * b).is_one() {
            return Err(Error::MalformedElement(format!(
                "({}, {}) does not satisfy a² − v b² ≡ 1",
                a.signed(),
                b.signed()
            )));
        }
        Ok(Self { a, b, v })
    }

    pub fn identity(v: ModInt) -> Self {
        let m = v.modulus();
        Self {
            a: m.one(),
            b: m.zero(),
            v,
        }
    }

    pub fn v(&self) -> ModInt {
        self.v
    }

    /// `(a, b)·(c, d) = (ac + v·bd, ad + bc)`.
    pub fn product(&self, other: &Self) -> Self {
        let v = self.v;
        Self {
            a: self.a * other.a + v * self.b * other.b,
            b: self.a * other.b + self.b * other.a,
            v,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            a: self.a,
            b: -self.b,
            v: self.v,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.v);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&base);
            }
            base = base.product(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn order(&self) -> u64 {
        let mut x = *self;
        let mut n = 1;
        while !x.is_identity() {
            x = x.product(self);
            n += 1;
        }
        n
    }

    /// Signed coordinates, used for ordering and display.
    pub fn signed(&self) -> (i64, i64) {
        (self.a.signed(), self.b.signed())
    }

    /// The `[[a, v·b], [b, a]]` matrix form of the pair.
    pub fn as_matrix(&self) -> [[ModInt; 2]; 2] {
        [[self.a, self.v * self.b], [self.b, self.a]]
    }
}

impl fmt::Display for NormOnePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.signed();
        write!(f, "({a}, {b})")
    }
}

fn odd_v(p: u64) -> Result<ModInt> {
    if p == 2 {
        return Err(Error::UnsupportedPrime {
            p,
            reason: "the norm-one group needs an odd prime",
        });
    }
    Ok(make_form(p, 1)?.v_odd())
}

/// All solutions of `a² − v·b² ≡ 1 (mod p)`, in signed lexicographic order.
pub fn solve_norm_one(p: u64) -> Result<Vec<NormOnePair>> {
    let v = odd_v(p)?;
    let f = v.modulus();
    let mut out: Vec<NormOnePair> = f
        .residues()
        .flat_map(|a| f.residues().map(move |b| (a, b)))
        .filter(|&(a, b)| (a * a - v * b * b).is_one())
        .map(|(a, b)| NormOnePair { a, b, v })
        .collect();
    out.sort_by_key(|x| x.signed());
    Ok(out)
}

/// A generator of the norm-one group (an element of order `p + 1`).
///
/// For `p = 3` and `p = 5` the conventional choices `(0, 1)` and `(−2, 1)` are
/// returned; otherwise the smallest generator in signed lexicographic order.
pub fn find_generator(p: u64) -> Result<NormOnePair> {
    let v = odd_v(p)?;
    let f = v.modulus();
    match p {
        3 => return NormOnePair::new(f.elem(0), f.elem(1), v),
        5 => return NormOnePair::new(f.elem(-2), f.elem(1), v),
        _ => {}
    }
    solve_norm_one(p)?
        .into_iter()
        .find(|x| x.order() == p + 1)
        .ok_or(Error::NotInImage)
}

/// Exponent `e` with `gen^e = x`, by linear scan over the cyclic group.
pub fn discrete_log(gen: &NormOnePair, x: &NormOnePair) -> Result<u64> {
    let mut acc = NormOnePair::identity(gen.v);
    let n = gen.order();
    for e in 0..n {
        if acc.a == x.a && acc.b == x.b {
            return Ok(e);
        }
        acc = acc.product(gen);
    }
    Err(Error::NotInImage)
}
