//! The 2×2 upper-left minor homomorphism, its identification with a dihedral
//! group, and the irreducible representations of even-degree dihedral groups.

use std::fmt;
use std::marker::PhantomData;

use crate::cmat::{CMat2, Real};
use crate::error::{Error, Result};
use crate::group::Sign;
use crate::matrix::Mat3;
use crate::modular::ModInt;
use crate::norm_one::{discrete_log, NormOnePair};

/// `a^m x^r` in `D_n = ⟨a, x | aⁿ = x² = e, xax = a⁻¹⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    n: u64,
    m: u64,
    r: bool,
}

impl DihedralElement {
    pub fn new(n: u64, m: i64, r: bool) -> Self {
        assert!(n > 0, "dihedral degree must be positive");
        Self {
            n,
            m: m.rem_euclid(n as i64) as u64,
            r,
        }
    }

    pub fn identity(n: u64) -> Self {
        Self::new(n, 0, false)
    }

    /// The rotation generator `a`.
    pub fn a(n: u64) -> Self {
        Self::new(n, 1, false)
    }

    /// The reflection generator `x`.
    pub fn x(n: u64) -> Self {
        Self::new(n, 0, true)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn rotation_exponent(&self) -> u64 {
        self.m
    }

    pub fn is_reflection(&self) -> bool {
        self.r
    }

    /// `a^m x^r · a^m' x^r' = a^(m ± m') x^(r ⊕ r')`, the sign flipped by `r`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dihedral groups of different degree");
        let m2 = if self.r { self.n - other.m } else { other.m };
        Self {
            n: self.n,
            m: (self.m + m2) % self.n,
            r: self.r ^ other.r,
        }
    }

    pub fn inv(&self) -> Self {
        if self.r {
            *self
        } else {
            Self {
                n: self.n,
                m: (self.n - self.m) % self.n,
                r: false,
            }
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    /// All `2n` elements, rotations first.
    pub fn all(n: u64) -> Vec<Self> {
        [false, true]
            .into_iter()
            .flat_map(|r| (0..n).map(move |m| Self { n, m, r }))
            .collect()
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.r) {
            (0, false) => f.write_str("e"),
            (0, true) => f.write_str("x"),
            (m, false) => write!(f, "a^{m}"),
            (m, true) => write!(f, "a^{m}x"),
        }
    }
}

/// An element `[[a, s·v·b], [b, s·a]]` of the image of the minor map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MinorMat2 {
    a: ModInt,
    b: ModInt,
    s: Sign,
    v: ModInt,
}

impl MinorMat2 {
    pub fn new(a: ModInt, b: ModInt, s: Sign, v: ModInt) -> Result<Self> {
        NormOnePair::new(a, b, v)?;
        Ok(Self { a, b, s, v })
    }

    pub fn identity(v: ModInt) -> Self {
        let f = v.modulus();
        Self {
            a: f.one(),
            b: f.zero(),
            s: Sign::Plus,
            v,
        }
    }

    /// `C = [[a0, v·b0], [b0, a0]]` for a norm-one generator `(a0, b0)`.
    pub fn c(gen: &NormOnePair) -> Self {
        Self {
            a: gen.a,
            b: gen.b,
            s: Sign::Plus,
            v: gen.v(),
        }
    }

    /// `Z = diag(1, −1)`.
    pub fn z(v: ModInt) -> Self {
        Self {
            s: Sign::Minus,
            ..Self::identity(v)
        }
    }

    /// Parses a general 2×2 matrix, checking the minor shape.
    pub fn from_entries(e: [[ModInt; 2]; 2], v: ModInt) -> Result<Self> {
        let (a, b) = (e[0][0], e[1][0]);
        let det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
        let s = Sign::of(det)
            .ok_or_else(|| Error::MalformedElement("minor determinant is not ±1".into()))?;
        let sm = a.modulus().elem(s.value());
        if e[1][1] != sm * a || e[0][1] != sm * v * b {
            return Err(Error::MalformedElement(
                "minor is not [[a, s v b], [b, s a]]".into(),
            ));
        }
        Self::new(a, b, s, v)
    }

    pub fn a(&self) -> ModInt {
        self.a
    }

    pub fn b(&self) -> ModInt {
        self.b
    }

    pub fn s(&self) -> Sign {
        self.s
    }

    pub fn v(&self) -> ModInt {
        self.v
    }

    pub fn entries(&self) -> [[ModInt; 2]; 2] {
        let sm = self.a.modulus().elem(self.s.value());
        [[self.a, sm * self.v * self.b], [self.b, sm * self.a]]
    }

    pub fn signed_entries(&self) -> [[i64; 2]; 2] {
        let e = self.entries();
        [
            [e[0][0].signed(), e[0][1].signed()],
            [e[1][0].signed(), e[1][1].signed()],
        ]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (x, y) = (self.entries(), other.entries());
        let mut e = x;
        for i in 0..2 {
            for j in 0..2 {
                e[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        Self::from_entries(e, self.v).expect("minor image is closed under products")
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::identity(self.v), |acc, _| acc.mul(self))
    }

    pub fn inv(&self) -> Self {
        let e = self.entries();
        let det_inv = (e[0][0] * e[1][1] - e[0][1] * e[1][0])
            .inv()
            .expect("determinant is ±1");
        let inv = [
            [e[1][1] * det_inv, -e[0][1] * det_inv],
            [-e[1][0] * det_inv, e[0][0] * det_inv],
        ];
        Self::from_entries(inv, self.v).expect("minor image is closed under inverses")
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.v)
    }
}

/// The upper-left 2×2 block of an element of `Ĝ_p`.
pub fn project_minor(l: &Mat3, v: ModInt) -> Result<MinorMat2> {
    if !(l.get(0, 2).is_zero() && l.get(1, 2).is_zero()) {
        return Err(Error::MalformedElement(format!(
            "{l}: third column is not (0, 0, ±1)"
        )));
    }
    let minor =
        MinorMat2::from_entries([[l.get(0, 0), l.get(0, 1)], [l.get(1, 0), l.get(1, 1)]], v)?;
    if l.get(2, 2) != l.modulus().elem(minor.s.value()) {
        return Err(Error::MalformedElement(format!(
            "{l}: corner entry differs from the minor determinant"
        )));
    }
    Ok(minor)
}

/// `φ`: the element `a^e x^r` with `minor = C^e Z^r`.
pub fn to_dihedral(minor: &MinorMat2, gen: &NormOnePair) -> Result<DihedralElement> {
    let n = gen.order();
    let pair = NormOnePair::new(minor.a, minor.b, gen.v()).map_err(|_| Error::NotInImage)?;
    let e = discrete_log(gen, &pair)?;
    Ok(DihedralElement::new(n, e as i64, minor.s == Sign::Minus))
}

/// `φ⁻¹`: `a^m x^r ↦ C^m Z^r`.
pub fn from_dihedral(d: &DihedralElement, gen: &NormOnePair) -> MinorMat2 {
    let rot = gen.pow(d.m);
    MinorMat2 {
        a: rot.a,
        b: rot.b,
        s: if d.r { Sign::Minus } else { Sign::Plus },
        v: gen.v(),
    }
}

/// The one-dimensional characters of `D_n`, `n` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DihedralCharacter {
    Trivial,
    /// `a ↦ 1, x ↦ −1`.
    Reflection,
    /// Kernel `⟨a², x⟩`: `a ↦ −1, x ↦ 1`.
    EvenRotation,
    /// Kernel `⟨a², ax⟩`: `a ↦ −1, x ↦ −1`.
    EvenRotationReflection,
}

impl DihedralCharacter {
    pub fn eval(&self, d: &DihedralElement) -> i64 {
        let rot = if d.m % 2 == 0 { 1 } else { -1 };
        let refl = if d.r { -1 } else { 1 };
        match self {
            DihedralCharacter::Trivial => 1,
            DihedralCharacter::Reflection => refl,
            DihedralCharacter::EvenRotation => rot,
            DihedralCharacter::EvenRotationReflection => rot * refl,
        }
    }
}

pub fn dihedral_one_irreps(n: u64) -> Result<[DihedralCharacter; 4]> {
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    Ok([
        DihedralCharacter::Trivial,
        DihedralCharacter::Reflection,
        DihedralCharacter::EvenRotation,
        DihedralCharacter::EvenRotationReflection,
    ])
}

/// `a ↦ rotation by 2π·idx/n`, `x ↦ diag(1, −1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralTwoIrrep<T> {
    n: u64,
    idx: u64,
    _scalar: PhantomData<T>,
}

pub fn dihedral_two_irrep<T: Real>(n: u64, idx: u64) -> Result<DihedralTwoIrrep<T>> {
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    let max = (n.saturating_sub(2)) / 2;
    if idx == 0 || idx > max {
        return Err(Error::IndexOutOfRange { index: idx, max });
    }
    Ok(DihedralTwoIrrep {
        n,
        idx,
        _scalar: PhantomData,
    })
}

impl<T: Real> DihedralTwoIrrep<T> {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn index(&self) -> u64 {
        self.idx
    }

    /// Rotation by `2π·j/n`, exact at multiples of a quarter turn.
    fn rotation(&self, j: u64) -> CMat2<T> {
        let (one, zero) = (T::one(), T::zero());
        let j = j % self.n;
        if (4 * j) % self.n == 0 {
            let (c, s) = match 4 * j / self.n {
                0 => (one, zero),
                1 => (zero, one),
                2 => (-one, zero),
                _ => (zero, -one),
            };
            return CMat2::from_real([[c, -s], [s, c]]);
        }
        let theta =
            T::TAU() * T::from(j).expect("small integer") / T::from(self.n).expect("small integer");
        CMat2::rotation(theta)
    }

    pub fn eval(&self, d: &DihedralElement) -> CMat2<T> {
        assert_eq!(d.n, self.n, "element from a different dihedral group");
        let rot = self.rotation(self.idx * d.m);
        if d.r {
            rot * CMat2::diag(T::one(), -T::one())
        } else {
            rot
        }
    }

    /// Number of dihedral elements sent to the identity.
    pub fn kernel_size(&self) -> usize {
        DihedralElement::all(self.n)
            .iter()
            .filter(|d| {
                self.eval(d)
                    .is_identity(T::from(1e-6).expect("representable"))
            })
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::make_form;
    use crate::group::{one_dim_characters, parameterize_mod_p, OneDimCharacter};
    use crate::modular::is_prime;
    use crate::norm_one::find_generator;
    use crate::ComplexMat2;

    fn odd_primes(max: u64) -> impl Iterator<Item = u64> {
        (3..=max).filter(|&n| is_prime(n))
    }

    #[test]
    fn minor_examples() {
        let f = make_form(5, 1).unwrap();
        let m = f.modulus();
        let v = f.v_odd();
        assert!(project_minor(&Mat3::identity(m), v).unwrap().is_identity());
        let rx_inf = Mat3::diag(m, [1, -1, -1]);
        assert_eq!(project_minor(&rx_inf, v).unwrap(), MinorMat2::z(v));
        let gen = find_generator(5).unwrap();
        assert_eq!(MinorMat2::c(&gen).signed_entries(), [[-2, -2], [1, -2]]);
        let lift = Mat3::from_rows(m, [[-2, -2, 0], [1, -2, 0], [0, 0, 1]]);
        assert_eq!(project_minor(&lift, v).unwrap(), MinorMat2::c(&gen));
        let bad = Mat3::from_rows(m, [[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(
            project_minor(&bad, v),
            Err(Error::MalformedElement(_))
        ));
    }

    #[test]
    fn dihedral_examples() {
        let gen = find_generator(5).unwrap();
        let v = gen.v();
        assert_eq!(
            to_dihedral(&MinorMat2::identity(v), &gen).unwrap(),
            DihedralElement::identity(6)
        );
        assert_eq!(
            to_dihedral(&MinorMat2::z(v), &gen).unwrap(),
            DihedralElement::x(6)
        );
        let c2 = MinorMat2::c(&gen).pow(2);
        assert_eq!(
            to_dihedral(&c2, &gen).unwrap(),
            DihedralElement::new(6, 2, false)
        );
    }

    #[test]
    fn image_relations() {
        for p in odd_primes(23) {
            let gen = find_generator(p).unwrap();
            let (c, z) = (MinorMat2::c(&gen), MinorMat2::z(gen.v()));
            assert!(c.pow(p + 1).is_identity());
            assert!((1..=p).all(|e| !c.pow(e).is_identity()));
            assert!(z.mul(&z).is_identity());
            assert_eq!(z.mul(&c).mul(&z), c.inv());
        }
    }

    #[test]
    fn minor_is_multiplicative() {
        for p in [3u64, 5, 7] {
            let v = make_form(p, 1).unwrap().v_odd();
            let mats: Vec<Mat3> = parameterize_mod_p(p)
                .unwrap()
                .iter()
                .map(|m| m.to_matrix(v))
                .collect();
            for x in &mats {
                for y in mats.iter().step_by(7) {
                    let k = |l: &Mat3| project_minor(l, v).unwrap();
                    assert_eq!(k(&(x * y)), k(x).mul(&k(y)));
                }
            }
        }
    }

    #[test]
    fn bridge_is_a_multiplicative_bijection() {
        for p in odd_primes(23) {
            let gen = find_generator(p).unwrap();
            let n = p + 1;
            let elems = DihedralElement::all(n);
            let minors: Vec<MinorMat2> = elems.iter().map(|d| from_dihedral(d, &gen)).collect();
            let distinct: std::collections::HashSet<_> = minors.iter().collect();
            assert_eq!(distinct.len() as u64, 2 * n);
            for (d, m) in elems.iter().zip(&minors) {
                assert_eq!(to_dihedral(m, &gen).unwrap(), *d);
            }
            for (d1, m1) in elems.iter().zip(&minors) {
                for (d2, m2) in elems.iter().zip(&minors) {
                    assert_eq!(to_dihedral(&m1.mul(m2), &gen).unwrap(), d1.mul(d2));
                }
            }
        }
    }

    #[test]
    fn presentation() {
        for n in [4u64, 6, 8, 12] {
            let (a, x) = (DihedralElement::a(n), DihedralElement::x(n));
            assert_eq!(a.pow(n), DihedralElement::identity(n));
            assert_eq!(x.mul(&x), DihedralElement::identity(n));
            assert_eq!(x.mul(&a).mul(&x), a.inv());
        }
    }

    #[test]
    fn one_irreps() {
        assert!(matches!(dihedral_one_irreps(5), Err(Error::OddDegree(5))));
        for n in [4u64, 6, 8, 10] {
            let chars = dihedral_one_irreps(n).unwrap();
            let elems = DihedralElement::all(n);
            for c in chars {
                for g in &elems {
                    for h in &elems {
                        assert_eq!(c.eval(&g.mul(h)), c.eval(g) * c.eval(h));
                    }
                }
            }
            assert_eq!(
                DihedralCharacter::Reflection.eval(&DihedralElement::a(n)),
                1
            );
            assert_eq!(
                DihedralCharacter::Reflection.eval(&DihedralElement::x(n)),
                -1
            );
        }
    }

    #[test]
    fn one_irreps_match_the_group_characters() {
        for p in [3u64, 5, 7] {
            let gen = find_generator(p).unwrap();
            let chi = one_dim_characters(p).unwrap();
            let pairs = [
                (DihedralCharacter::Trivial, OneDimCharacter::Det),
                (DihedralCharacter::Reflection, OneDimCharacter::S),
                (DihedralCharacter::EvenRotation, OneDimCharacter::T),
                (
                    DihedralCharacter::EvenRotationReflection,
                    OneDimCharacter::ST,
                ),
            ];
            for m in parameterize_mod_p(p).unwrap() {
                let d = to_dihedral(
                    &project_minor(&m.to_matrix(gen.v()), gen.v()).unwrap(),
                    &gen,
                )
                .unwrap();
                for (dc, gc) in pairs {
                    assert_eq!(dc.eval(&d), chi.value(gc, &m));
                }
            }
        }
    }

    #[test]
    fn two_irrep_examples() {
        let r4 = dihedral_two_irrep::<f64>(4, 1).unwrap();
        assert_eq!(
            r4.eval(&DihedralElement::a(4)),
            ComplexMat2::from_real([[0.0, -1.0], [1.0, 0.0]])
        );
        let h = 3f64.sqrt() / 2.0;
        let r1 = dihedral_two_irrep::<f64>(6, 1).unwrap();
        assert!(r1
            .eval(&DihedralElement::a(6))
            .approx_eq(&ComplexMat2::from_real([[0.5, -h], [h, 0.5]]), 1e-12));
        let r2 = dihedral_two_irrep::<f64>(6, 2).unwrap();
        assert!(r2
            .eval(&DihedralElement::a(6))
            .approx_eq(&ComplexMat2::from_real([[-0.5, -h], [h, -0.5]]), 1e-12));
        assert_eq!(
            r1.eval(&DihedralElement::x(6)),
            ComplexMat2::diag(1.0, -1.0)
        );
        assert_eq!((r1.kernel_size(), r2.kernel_size()), (1, 2));
    }

    #[test]
    fn two_irrep_indices() {
        assert!(matches!(
            dihedral_two_irrep::<f64>(6, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            dihedral_two_irrep::<f64>(6, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            dihedral_two_irrep::<f64>(7, 1),
            Err(Error::OddDegree(7))
        ));
    }

    #[test]
    fn two_irreps_are_unitary_homomorphisms() {
        for n in (4..=24u64).step_by(2) {
            let elems = DihedralElement::all(n);
            for idx in 1..=(n - 2) / 2 {
                let rho = dihedral_two_irrep::<f64>(n, idx).unwrap();
                for g in &elems {
                    assert!(rho.eval(g).is_unitary(1e-12));
                    for h in &elems {
                        assert!(rho
                            .eval(&g.mul(h))
                            .approx_eq(&(rho.eval(g) * rho.eval(h)), 1e-12));
                    }
                }
            }
        }
        let rho = dihedral_two_irrep::<f32>(10, 3).unwrap();
        let a = DihedralElement::a(10);
        assert!(rho.eval(&a.pow(10)).is_identity(1e-5));
    }
}
