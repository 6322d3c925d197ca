//! Two-dimensional complex representations of `SO(3)_p` that factor through
//! reduction mod `p`: the dihedral family for odd `p` and the `S_3` one for `p = 2`.

use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;

use crate::dihedral::{dihedral_two_irrep, project_minor, to_dihedral, DihedralTwoIrrep};
use crate::error::{Error, Result};
use crate::form::{make_form, FormSpec};
use crate::group::FiniteMatrixGroup;
use crate::matrix::Mat3;
use crate::modular::Modulus;
use crate::norm_one::{find_generator, NormOnePair};
use crate::ComplexMat2;

/// Tolerance for every floating-point comparison in this module.
pub const TOL: f64 = 1e-9;

/// A 3×3 matrix of truncated p-adic integers: each entry is a coherent
/// sequence `(a₁, …, a_K)` with `a_j ∈ Z/p^j` and `a_{j+1} ≡ a_j (mod p^j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicMat3 {
    p: u64,
    depth: u32,
    entries: Vec<Vec<u64>>,
}

impl PadicMat3 {
    /// Validates and reduces nine sequences given row-major.
    pub fn new(p: u64, entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.len() != 9 {
            return Err(Error::MalformedElement(format!(
                "expected 9 entries, got {}",
                entries.len()
            )));
        }
        let depth = entries[0].len() as u32;
        if depth == 0 || entries.iter().any(|e| e.len() as u32 != depth) {
            return Err(Error::MalformedElement(
                "entry sequences must share a positive depth".into(),
            ));
        }
        let mods: Vec<Modulus> = (1..=depth)
            .map(|j| Modulus::new(p, j))
            .collect::<Result<_>>()?;
        let mut reduced = Vec::with_capacity(9);
        for seq in &entries {
            let r: Vec<u64> = seq.iter().zip(&mods).map(|(&x, m)| m.reduce(x)).collect();
            for j in 1..r.len() {
                if r[j] % mods[j - 1].value() != r[j - 1] {
                    return Err(Error::IncoherentSequence { depth: j + 1 });
                }
            }
            reduced.push(r);
        }
        Ok(Self {
            p,
            depth,
            entries: reduced,
        })
    }

    /// The constant-tail lift of a matrix over `Z/p^k`: `a_j = x mod p^j` for `j ≤ k`.
    pub fn from_mat3(l: &Mat3) -> Self {
        let m = l.modulus();
        let entries = l
            .raw_entries()
            .iter()
            .map(|&x| (1..=m.k()).map(|j| x % m.p().pow(j)).collect())
            .collect();
        Self {
            p: m.p(),
            depth: m.k(),
            entries,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Row-major sequences.
    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// `π_k`: the level-`k` components.
    pub fn project(&self, k: u32) -> Result<Mat3> {
        if k == 0 || k > self.depth {
            return Err(Error::IndexOutOfRange {
                index: k as u64,
                max: self.depth as u64,
            });
        }
        let m = Modulus::new(self.p, k)?;
        let rows = std::array::from_fn(|i| {
            std::array::from_fn(|j| self.entries[3 * i + j][k as usize - 1] as i64)
        });
        Ok(Mat3::from_rows(m, rows))
    }

    pub fn project_pi1(&self) -> Mat3 {
        self.project(1).expect("depth is at least one")
    }
}

/// A permutation of `{1, 2, 3}`, stored as images of `0, 1, 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct S3Element([usize; 3]);

impl S3Element {
    pub fn new(images: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i] {
                return Err(Error::MalformedElement(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    pub fn images(&self) -> [usize; 3] {
        self.0
    }

    pub fn transposition(i: usize, j: usize) -> Self {
        let mut im = [0, 1, 2];
        im.swap(i, j);
        Self(im)
    }

    /// `(σ ∘ τ)(i) = σ(τ(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.map(|i| self.0[i]))
    }

    /// The permutation `π` with `L e_i = e_{π(i)}` for a permutation matrix mod 2.
    pub fn from_matrix(l: &Mat3) -> Result<Self> {
        let mut im = [usize::MAX; 3];
        for (j, slot) in im.iter_mut().enumerate() {
            let ones: Vec<usize> = (0..3).filter(|&i| l.get(i, j).is_one()).collect();
            let zeros = (0..3).filter(|&i| l.get(i, j).is_zero()).count();
            if ones.len() != 1 || zeros != 2 {
                return Err(Error::NotInGroup(format!(
                    "{l} is not a permutation matrix"
                )));
            }
            *slot = ones[0];
        }
        Self::new(im)
    }

    pub fn to_matrix(&self, modulus: Modulus) -> Mat3 {
        let mut l = Mat3::zero(modulus);
        for (j, &i) in self.0.iter().enumerate() {
            l.set(i, j, modulus.one());
        }
        l
    }
}

impl fmt::Display for S3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [0, 1, 2] => f.write_str("()"),
            [1, 0, 2] => f.write_str("(12)"),
            [0, 2, 1] => f.write_str("(23)"),
            [2, 1, 0] => f.write_str("(13)"),
            [1, 2, 0] => f.write_str("(123)"),
            _ => f.write_str("(132)"),
        }
    }
}

/// `τ'`: the permutation action restricted to `x₁ + x₂ + x₃ = 0`, in the
/// basis `{e₁ − e₂, e₂ − e₃}`.
pub fn tau_prime(pi: &S3Element) -> ComplexMat2 {
    // x = c1 f1 + c2 f2 has c1 = x1, c2 = x1 + x2
    let coords = |x: [f64; 3]| [x[0], x[0] + x[1]];
    let act = |x: [f64; 3]| {
        let mut y = [0.0; 3];
        for i in 0..3 {
            y[pi.0[i]] = x[i];
        }
        y
    };
    let c1 = coords(act([1.0, -1.0, 0.0]));
    let c2 = coords(act([0.0, 1.0, -1.0]));
    ComplexMat2::from_real([[c1[0], c2[0]], [c1[1], c2[1]]])
}

#[derive(Debug, Clone)]
enum Kind {
    Dihedral {
        gen: NormOnePair,
        irrep: DihedralTwoIrrep<f64>,
    },
    Symmetric,
}

/// One qubit representation: `ρ_i ∘ φ ∘ K' ∘ π₁` for odd `p`, `τ' ∘ φ ∘ π₁` for `p = 2`.
#[derive(Debug, Clone)]
pub struct QubitRep {
    p: u64,
    variant: u64,
    form: FormSpec,
    kind: Kind,
}

/// Number of variants: `(p − 1)/2` for odd `p`, one for `p = 2`.
pub fn variant_count(p: u64) -> Result<u64> {
    Modulus::new(p, 1)?;
    Ok(if p == 2 { 1 } else { (p - 1) / 2 })
}

impl QubitRep {
    pub fn new(p: u64, variant: u64) -> Result<Self> {
        let count = variant_count(p)?;
        if variant == 0 || variant > count {
            return Err(Error::BadVariant {
                p,
                variant: variant as usize,
            });
        }
        let form = make_form(p, 1)?;
        let kind = if p == 2 {
            Kind::Symmetric
        } else {
            let gen = find_generator(p)?;
            Kind::Dihedral {
                gen,
                irrep: dihedral_two_irrep(p + 1, variant)?,
            }
        };
        Ok(Self {
            p,
            variant,
            form,
            kind,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn variant(&self) -> u64 {
        self.variant
    }

    pub fn modulus(&self) -> Modulus {
        self.form.modulus()
    }

    /// Image of an element of `Ĝ_p`.
    pub fn eval_mod_p(&self, l: &Mat3) -> Result<ComplexMat2> {
        if l.modulus() != self.modulus() {
            return Err(Error::ModulusMismatch {
                left: self.modulus().value(),
                right: l.modulus().value(),
            });
        }
        if !self.form.preserves(l) {
            return Err(Error::NotInGroup(format!(
                "{l} does not preserve the form mod {}",
                self.p
            )));
        }
        match &self.kind {
            Kind::Symmetric => Ok(tau_prime(&S3Element::from_matrix(l)?)),
            Kind::Dihedral { gen, irrep } => {
                let minor = project_minor(l, gen.v())?;
                Ok(irrep.eval(&to_dihedral(&minor, gen)?))
            }
        }
    }

    /// Image of a p-adic matrix, read through its first components.
    pub fn eval(&self, m: &PadicMat3) -> Result<ComplexMat2> {
        if m.p() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: m.p(),
            });
        }
        self.eval_mod_p(&m.project_pi1())
    }

    /// Images of every element, in group order.
    pub fn images(&self, group: &FiniteMatrixGroup) -> Result<Vec<ComplexMat2>> {
        group
            .elements()
            .iter()
            .map(|l| self.eval_mod_p(l))
            .collect()
    }
}

/// `J_3` written directly: the minor with `{0, ±1}` entries read as complex integers.
pub fn embed_p3(l: &Mat3) -> Result<ComplexMat2> {
    if l.modulus() != Modulus::new(3, 1)? {
        return Err(Error::UnsupportedPrime {
            p: l.modulus().p(),
            reason: "the integer embedding is defined mod 3",
        });
    }
    let v = make_form(3, 1)?.v_odd();
    let e = project_minor(l, v)?.signed_entries();
    Ok(ComplexMat2::from_real([
        [e[0][0] as f64, e[0][1] as f64],
        [e[1][0] as f64, e[1][1] as f64],
    ]))
}

/// Named generator lifts: `C`, `Z` and `identity` for odd `p`; `(12)`, `(23)` and `identity` for `p = 2`.
pub fn generator_lift(p: u64, name: &str) -> Result<Mat3> {
    let m = Modulus::new(p, 1)?;
    match (p, name) {
        (_, "identity" | "I" | "e") => Ok(Mat3::identity(m)),
        (2, "(12)") => Ok(S3Element::transposition(0, 1).to_matrix(m)),
        (2, "(23)") => Ok(S3Element::transposition(1, 2).to_matrix(m)),
        (2, "(13)") => Ok(S3Element::transposition(0, 2).to_matrix(m)),
        (p, "C") if p != 2 => {
            let g = find_generator(p)?;
            let z = m.zero();
            Mat3::from_entries([g.a, g.v() * g.b, z, g.b, g.a, z, z, z, m.one()])
        }
        (p, "Z") if p != 2 => Ok(Mat3::diag(m, [1, -1, -1])),
        _ => Err(Error::Parse(format!(
            "unknown generator {name:?} for p = {p}"
        ))),
    }
}

/// `max ‖J(gh) − J(g)J(h)‖` over all pairs.
pub fn homomorphism_deviation(group: &FiniteMatrixGroup, images: &[ComplexMat2]) -> f64 {
    let n = group.order();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| images[group.mul_idx(i, j)].max_abs_diff(&(images[i] * images[j])))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
}

/// Dimension of `{X : X J = J X for all J}`.
pub fn commutant_dimension(images: &[ComplexMat2]) -> usize {
    // unknown X = (x00, x01, x10, x11); each J contributes the 4 equations (XJ − JX)_{ij} = 0
    let mut rows: Vec<[Complex<f64>; 4]> = Vec::with_capacity(4 * images.len());
    let z = Complex::new(0.0, 0.0);
    for j in images {
        let e = j.e;
        for r in 0..2 {
            for c in 0..2 {
                let mut row = [z; 4];
                for k in 0..2 {
                    row[2 * r + k] += e[k][c];
                    row[2 * k + c] -= e[r][k];
                }
                rows.push(row);
            }
        }
    }
    4 - rank(&mut rows)
}

fn rank(rows: &mut [[Complex<f64>; 4]]) -> usize {
    let mut r = 0;
    for col in 0..4 {
        let Some(piv) =
            (r..rows.len()).max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm()))
        else {
            break;
        };
        if rows[piv][col].norm() < TOL {
            continue;
        }
        rows.swap(r, piv);
        let lead = rows[r][col];
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][col] / lead;
                for c in 0..4 {
                    let t = rows[r][c];
                    rows[i][c] -= f * t;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

pub fn is_irreducible(images: &[ComplexMat2]) -> bool {
    commutant_dimension(images) == 1
}

/// Elements sent to the identity.
pub fn kernel_size(images: &[ComplexMat2]) -> usize {
    images.iter().filter(|j| j.is_identity(TOL)).count()
}

#[derive(Debug, Clone)]
pub struct Unitarized {
    /// `S = P^{1/2}` with `P = (1/|G|) Σ J(g)* J(g)`.
    pub change_of_basis: ComplexMat2,
    /// `S J(g) S⁻¹`.
    pub images: Vec<ComplexMat2>,
}

/// Conjugates a representation of a finite group into a unitary one.
pub fn unitarize(images: &[ComplexMat2]) -> Unitarized {
    let n = images.len().max(1) as f64;
    let p = images
        .iter()
        .fold(ComplexMat2::zero(), |acc, j| acc + j.adjoint() * *j)
        .scale(Complex::new(1.0 / n, 0.0));
    let s = p.sqrt_hermitian_pd();
    let s_inv = s
        .inverse()
        .expect("averaged Gram matrix is positive definite");
    Unitarized {
        change_of_basis: s,
        images: images.iter().map(|j| s * *j * s_inv).collect(),
    }
}

/// Results of the standard checks on one representation.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct QubitChecks {
    pub p: u64,
    pub variant: u64,
    pub group_order: usize,
    pub homomorphism_deviation: f64,
    pub commutant_dimension: usize,
    pub irreducible: bool,
    pub unitary_deviation: f64,
    pub unitarized_deviation: f64,
    pub kernel_size: usize,
    pub image_size: usize,
    pub image_kernel_size: usize,
}

/// Homomorphism, irreducibility, unitarity and kernel checks over `Ĝ_p`.
pub fn run_checks(rep: &QubitRep, group: &FiniteMatrixGroup) -> Result<QubitChecks> {
    let images = rep.images(group)?;
    let unitary_dev = |imgs: &[ComplexMat2]| {
        imgs.iter()
            .map(|j| (j.adjoint() * *j).max_abs_diff(&ComplexMat2::identity()))
            .fold(0.0, f64::max)
    };
    let u = unitarize(&images);
    let kernel = kernel_size(&images);
    let image_kernel = match &rep.kind {
        Kind::Dihedral { irrep, .. } => irrep.kernel_size(),
        // τ' is faithful on S_3
        Kind::Symmetric => kernel,
    };
    let mut distinct: Vec<[[i64; 2]; 4]> = images
        .iter()
        .map(|j| {
            j.to_pairs()
                .map(|[re, im]| [(re * 1e6).round() as i64, (im * 1e6).round() as i64])
        })
        .collect();
    distinct.sort_unstable();
    distinct.dedup();
    let dim = commutant_dimension(&images);
    Ok(QubitChecks {
        p: rep.p,
        variant: rep.variant,
        group_order: group.order(),
        homomorphism_deviation: homomorphism_deviation(group, &images),
        commutant_dimension: dim,
        irreducible: dim == 1,
        unitary_deviation: unitary_dev(&images),
        unitarized_deviation: unitary_dev(&u.images),
        kernel_size: kernel,
        image_size: distinct.len(),
        image_kernel_size: image_kernel,
    })
}
