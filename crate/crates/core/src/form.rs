//! The anisotropic ternary quadratic form preserved by `SO(3)_p` and its Gram matrix.

use crate::error::Result;
use crate::matrix::Mat3;
use crate::modular::{find_nonresidue, ModInt, Modulus};

/// `Q(x) = x1² − v·x2² + p·x3²` for odd `p`, and `x1² + x2² + x3²` for `p = 2`,
/// truncated to `Z/p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormSpec {
    modulus: Modulus,
    v: Option<ModInt>,
    gram: Mat3,
}

/// Builds the form for prime `p` at level `k`.
///
/// `v = −1` when `p ≡ 3 (mod 4)`, and `v = −u` with `u` the smallest
/// non-residue when `p ≡ 1 (mod 4)`. The Gram matrix is `diag(1, −v, p)`,
/// or the identity for `p = 2`.
pub fn make_form(p: u64, k: u32) -> Result<FormSpec> {
    let modulus = Modulus::new(p, k)?;
    if p == 2 {
        return Ok(FormSpec {
            modulus,
            v: None,
            gram: Mat3::identity(modulus),
        });
    }
    let v = if p % 4 == 3 {
        modulus.elem(-1)
    } else {
        let u = find_nonresidue(p)?;
        -modulus.elem(u.value() as i64)
    };
    let gram = Mat3::diag(modulus, [1, -v.signed(), p as i64]);
    Ok(FormSpec {
        modulus,
        v: Some(v),
        gram,
    })
}

impl FormSpec {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }

    /// The non-square `v`; `None` for `p = 2`.
    pub fn v(&self) -> Option<ModInt> {
        self.v
    }

    /// `v` for odd `p`.
    ///
    /// # Panics
    /// When called on the `p = 2` form.
    pub fn v_odd(&self) -> ModInt {
        self.v.expect("v is only defined for odd p")
    }

    /// The diagonal Gram matrix `A`.
    pub fn gram(&self) -> &Mat3 {
        &self.gram
    }

    pub(crate) fn diag_raw(&self) -> [u64; 3] {
        [
            self.gram.raw(0, 0),
            self.gram.raw(1, 1),
            self.gram.raw(2, 2),
        ]
    }

    pub fn eval_q(&self, x: [ModInt; 3]) -> ModInt {
        x.iter()
            .enumerate()
            .map(|(i, &xi)| self.gram.get(i, i) * xi * xi)
            .fold(self.modulus.zero(), |a, b| a + b)
    }

    pub(crate) fn q_raw(&self, x: &[u64; 3]) -> u64 {
        self.bilinear_raw(x, x)
    }

    pub(crate) fn bilinear_raw(&self, x: &[u64; 3], y: &[u64; 3]) -> u64 {
        let m = self.modulus;
        let d = self.diag_raw();
        (0..3).fold(0, |acc, i| {
            m.add_raw(acc, m.mul_raw(d[i], m.mul_raw(x[i], y[i])))
        })
    }

    /// `Lᵀ A L ≡ A` and `det L ≡ 1`.
    pub fn preserves(&self, l: &Mat3) -> bool {
        l.modulus() == self.modulus
            && l.transpose() * self.gram * *l == self.gram
            && l.det().is_one()
    }
}

/// Residue-level anisotropy check.
///
/// For odd `p` the `x3` term vanishes modulo `p`, so the check is that
/// `x1² − v·x2² ≡ 0 (mod p)` has only the trivial solution. For `p = 2` the
/// sum of three squares is tested on primitive vectors modulo 8.
pub fn check_anisotropy(form: &FormSpec) -> bool {
    let p = form.p();
    if p == 2 {
        let sq = |x: u64| x * x;
        return !(0..8u64).any(|a| {
            (0..8u64).any(|b| {
                (0..8u64).any(|c| {
                    (a % 2 == 1 || b % 2 == 1 || c % 2 == 1) && (sq(a) + sq(b) + sq(c)) % 8 == 0
                })
            })
        });
    }
    let f = form.modulus.base();
    let v = form.v_odd().value() % p;
    !(0..p).any(|a| {
        (0..p).any(|b| {
            (a, b) != (0, 0) && f.sub_raw(f.mul_raw(a, a), f.mul_raw(v, f.mul_raw(b, b))) == 0
        })
    })
}
