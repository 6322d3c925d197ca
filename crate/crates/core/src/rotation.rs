//! Rotations about the reference axes modulo `p^k`, the axis subgroups, and
//! Cardano compositions `R_x · R_y · R_z`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::form::FormSpec;
use crate::matrix::Mat3;
use crate::modular::{ModInt, Modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Indices `(g, h, n)` of the in-plane basis vectors and the axis.
    fn frame(self) -> (usize, usize, usize) {
        match self {
            Axis::X => (1, 2, 0),
            Axis::Y => (0, 2, 1),
            Axis::Z => (0, 1, 2),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// A rotation parameter: a residue or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RotParam {
    Finite(ModInt),
    Infinity,
}

impl fmt::Display for RotParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotParam::Finite(x) => write!(f, "{}", x.signed()),
            RotParam::Infinity => f.write_str("∞"),
        }
    }
}

/// The plane data of one reference axis: `α = Q(h)/Q(g)` and `κ = Q(g)·Q(h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisSpec {
    axis: Axis,
    alpha: ModInt,
    kappa: ModInt,
}

impl AxisSpec {
    pub fn new(axis: Axis, form: &FormSpec) -> Self {
        let (g, h, _) = axis.frame();
        let qg = form.gram().get(g, g);
        let qh = form.gram().get(h, h);
        // Q(g) is 1 or -v, always a unit.
        let alpha = qh * qg.inv().expect("in-plane reference vector has unit norm");
        Self {
            axis,
            alpha,
            kappa: qg * qh,
        }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn alpha(&self) -> ModInt {
        self.alpha
    }

    pub fn kappa(&self) -> ModInt {
        self.kappa
    }

    pub fn modulus(&self) -> Modulus {
        self.alpha.modulus()
    }

    fn embed(&self, block: [[ModInt; 2]; 2]) -> Mat3 {
        let m = self.modulus();
        let (g, h, n) = self.axis.frame();
        let mut r = Mat3::zero(m);
        r.set(g, g, block[0][0]);
        r.set(g, h, block[0][1]);
        r.set(h, g, block[1][0]);
        r.set(h, h, block[1][1]);
        r.set(n, n, m.one());
        r
    }
}

/// `R_n(σ)`: the rotation by parameter `σ` about a reference axis.
///
/// Fails with [`Error::SingularDenominator`] when `1 + α σ²` is not a unit
/// (this happens for odd `σ` when `p = 2`; see [`rotation_odd_branch`]).
pub fn rotation(axis: &AxisSpec, sigma: RotParam) -> Result<Mat3> {
    let m = axis.modulus();
    match sigma {
        RotParam::Infinity => {
            let minus = -m.one();
            Ok(axis.embed([[minus, m.zero()], [m.zero(), minus]]))
        }
        RotParam::Finite(s) => {
            let a = axis.alpha;
            let a_s2 = a * s * s;
            let den = (m.one() + a_s2)
                .inv()
                .map_err(|_| Error::SingularDenominator { modulus: m.value() })?;
            let c = (m.one() - a_s2) * den;
            let upper = -(a * s).scale(2) * den;
            let lower = s.scale(2) * den;
            Ok(axis.embed([[c, upper], [lower, c]]))
        }
    }
}

/// The odd-parameter block for `p = 2`: `R_n(1 + 2σ)` written with unit denominators,
/// for `σ ∈ Z/2^(k−1)`.
pub fn rotation_odd_branch(axis: &AxisSpec, sigma: ModInt) -> Result<Mat3> {
    let m = axis.modulus();
    if m.p() != 2 {
        return Err(Error::UnsupportedPrime {
            p: m.p(),
            reason: "the odd branch exists only for p = 2",
        });
    }
    let t = sigma + sigma * sigma;
    let den = (m.one() + t.scale(2)).inv()?;
    let c = -t.scale(2) * den;
    let off = (m.one() + sigma.scale(2)) * den;
    Ok(axis.embed([[c, -off], [off, c]]))
}

/// Which half of an axis subgroup a factor comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `R_n(σ)`.
    First,
    /// `R_n(∞) · R_n(σ)`.
    Second,
}

impl Branch {
    pub fn digit(self) -> char {
        match self {
            Branch::First => '1',
            Branch::Second => '2',
        }
    }
}

/// A branch-tagged element of an axis subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxisFactor {
    pub axis: Axis,
    pub branch: Branch,
    pub sigma: ModInt,
}

impl AxisFactor {
    pub fn first(axis: Axis, sigma: ModInt) -> Self {
        Self {
            axis,
            branch: Branch::First,
            sigma,
        }
    }

    pub fn second(axis: Axis, sigma: ModInt) -> Self {
        Self {
            axis,
            branch: Branch::Second,
            sigma,
        }
    }

    /// `R_n(∞)`.
    pub fn infinity(axis: Axis, modulus: Modulus) -> Self {
        Self::second(axis, modulus.zero())
    }

    /// The single rotation parameter when the factor is one rotation:
    /// `σ` on the first branch, `∞` for `R_n(∞)·R_n(0)`.
    pub fn rot_param(&self) -> Option<RotParam> {
        match self.branch {
            Branch::First => Some(RotParam::Finite(self.sigma)),
            Branch::Second if self.sigma.is_zero() => Some(RotParam::Infinity),
            Branch::Second => None,
        }
    }

    pub fn matrix(&self, form: &FormSpec) -> Result<Mat3> {
        let spec = AxisSpec::new(self.axis, form);
        let r = rotation(&spec, RotParam::Finite(self.sigma))?;
        match self.branch {
            Branch::First => Ok(r),
            Branch::Second => Ok(rotation(&spec, RotParam::Infinity)? * r),
        }
    }
}

impl fmt::Display for AxisFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.branch, self.rot_param()) {
            (_, Some(r)) => write!(f, "R_{}({})", self.axis, r),
            _ => write!(
                f,
                "R_{}(∞)R_{}({})",
                self.axis,
                self.axis,
                self.sigma.signed()
            ),
        }
    }
}

/// All branch-tagged parameters of an axis subgroup for odd `p`:
/// `σ ∈ Z/p^k` on both branches for `x, y`; for `z` the second branch uses `σ ∈ p·Z/p^k`.
pub fn axis_factors(axis: Axis, modulus: Modulus) -> Vec<AxisFactor> {
    let p = modulus.p();
    let mut out: Vec<AxisFactor> = modulus
        .residues()
        .map(|s| AxisFactor::first(axis, s))
        .collect();
    out.extend(
        modulus
            .residues()
            .filter(|s| axis != Axis::Z || s.value() % p == 0)
            .map(|s| AxisFactor::second(axis, s)),
    );
    out
}

/// The axis subgroup `G_{n,p^k}`, deduplicated, in parameter order.
pub fn axis_group(axis: Axis, form: &FormSpec) -> Result<Vec<Mat3>> {
    let modulus = form.modulus();
    let spec = AxisSpec::new(axis, form);
    let mut candidates = Vec::new();
    if modulus.p() == 2 {
        let inf = rotation(&spec, RotParam::Infinity)?;
        for s in modulus.residues().filter(|s| s.value() % 2 == 0) {
            let r = rotation(&spec, RotParam::Finite(s))?;
            candidates.push(r);
            candidates.push(inf * r);
        }
        let half = modulus.value() / 2;
        for s in (0..half).map(|s| modulus.elem(s as i64)) {
            candidates.push(rotation_odd_branch(&spec, s)?);
        }
    } else {
        for f in axis_factors(axis, modulus) {
            candidates.push(f.matrix(form)?);
        }
    }
    let mut seen = HashSet::new();
    candidates.retain(|m| seen.insert(*m));
    Ok(candidates)
}

/// A branch-tagged Cardano decomposition `M = R_x · R_y · R_z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CardanoDecomposition {
    pub factors: [AxisFactor; 3],
}

impl CardanoDecomposition {
    /// Branch code such as `"111"` or `"221"`.
    pub fn branch_code(&self) -> String {
        self.factors.iter().map(|f| f.branch.digit()).collect()
    }
}

impl fmt::Display for CardanoDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}·{}·{}",
            self.branch_code(),
            self.factors[0],
            self.factors[1],
            self.factors[2]
        )
    }
}

/// The product `R_x · R_y · R_z` of three branch-tagged factors.
pub fn cardano_compose(form: &FormSpec, factors: [AxisFactor; 3]) -> Result<Mat3> {
    if factors
        .iter()
        .map(|f| f.axis)
        .ne([Axis::X, Axis::Y, Axis::Z])
    {
        return Err(Error::MalformedElement(
            "Cardano factors must be ordered x, y, z".into(),
        ));
    }
    Ok(factors[0].matrix(form)? * factors[1].matrix(form)? * factors[2].matrix(form)?)
}

fn require_odd(form: &FormSpec) -> Result<()> {
    if form.p() == 2 {
        return Err(Error::UnsupportedPrime {
            p: 2,
            reason: "no Cardano decompositions exist for p = 2",
        });
    }
    Ok(())
}

/// Every branch-parameter triple, grouped by the matrix it produces.
///
/// Works at any level `k`; the multiplicity per matrix is reported as found.
pub fn cardano_table(form: &FormSpec) -> Result<HashMap<Mat3, Vec<CardanoDecomposition>>> {
    require_odd(form)?;
    let m = form.modulus();
    let tagged = |axis| -> Result<Vec<(AxisFactor, Mat3)>> {
        axis_factors(axis, m)
            .into_iter()
            .map(|f| Ok((f, f.matrix(form)?)))
            .collect()
    };
    let (xs, ys, zs) = (tagged(Axis::X)?, tagged(Axis::Y)?, tagged(Axis::Z)?);
    let partial: Vec<HashMap<Mat3, Vec<CardanoDecomposition>>> = xs
        .par_iter()
        .map(|(fx, mx)| {
            let mut local: HashMap<Mat3, Vec<CardanoDecomposition>> = HashMap::new();
            for (fy, my) in &ys {
                let xy = *mx * *my;
                for (fz, mz) in &zs {
                    local
                        .entry(xy * *mz)
                        .or_default()
                        .push(CardanoDecomposition {
                            factors: [*fx, *fy, *fz],
                        });
                }
            }
            local
        })
        .collect();
    let mut table: HashMap<Mat3, Vec<CardanoDecomposition>> = HashMap::new();
    for local in partial {
        for (k, mut v) in local {
            table.entry(k).or_default().append(&mut v);
        }
    }
    Ok(table)
}

/// All branch-tagged `R_x R_y R_z` decompositions of `target`, found by exhaustive search.
pub fn cardano_decompose(form: &FormSpec, target: &Mat3) -> Result<Vec<CardanoDecomposition>> {
    require_odd(form)?;
    if target.modulus() != form.modulus() {
        return Err(Error::ModulusMismatch {
            left: form.modulus().value(),
            right: target.modulus().value(),
        });
    }
    let m = form.modulus();
    let zs: Vec<(AxisFactor, Mat3)> = axis_factors(Axis::Z, m)
        .into_iter()
        .map(|f| Ok((f, f.matrix(form)?)))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    for fx in axis_factors(Axis::X, m) {
        let mx = fx.matrix(form)?;
        for fy in axis_factors(Axis::Y, m) {
            let xy = mx * fy.matrix(form)?;
            for (fz, mz) in &zs {
                if xy * *mz == *target {
                    found.push(CardanoDecomposition {
                        factors: [fx, fy, *fz],
                    });
                }
            }
        }
    }
    if found.is_empty() {
        return Err(Error::NotInGroup(format!(
            "{target} has no R_x R_y R_z decomposition"
        )));
    }
    Ok(found)
}
