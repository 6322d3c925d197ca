//! Finite matrix groups over `Z/p^k`: construction by closure or by solving
//! the defining system, and structural invariants.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{make_form, FormSpec};
use crate::matrix::Mat3;
use crate::modular::{ModInt, Modulus};
use crate::norm_one::{discrete_log, find_generator, solve_norm_one, NormOnePair};
use crate::rotation::{axis_group, Axis};

/// Caps on enumeration work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_elements: usize,
    pub max_visits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_elements: 10_000_000,
            max_visits: 1_000_000_000,
        }
    }
}

#[derive(Debug, Clone)]
struct CayleyTable {
    n: usize,
    prod: Vec<u32>,
    inv: Vec<u32>,
}

/// An enumerated matrix group with a hash index from matrix to element id.
#[derive(Clone)]
pub struct FiniteMatrixGroup {
    modulus: Modulus,
    elements: Vec<Mat3>,
    index: HashMap<Mat3, usize>,
    table: OnceLock<CayleyTable>,
}

impl fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("modulus", &self.modulus.value())
            .field("order", &self.elements.len())
            .finish()
    }
}

impl PartialEq for FiniteMatrixGroup {
    /// Same modulus and the same element set, regardless of enumeration order.
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.order() == other.order()
            && self.elements.iter().all(|m| other.contains(m))
    }
}

impl FiniteMatrixGroup {
    /// Wraps an element list, dropping duplicates. Closure is not checked here;
    /// see [`FiniteMatrixGroup::is_closed`].
    pub fn from_elements(modulus: Modulus, elements: Vec<Mat3>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        let mut kept = Vec::with_capacity(elements.len());
        for m in elements {
            if m.modulus() != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus.value(),
                    right: m.modulus().value(),
                });
            }
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(m) {
                e.insert(kept.len());
                kept.push(m);
            }
        }
        Ok(Self {
            modulus,
            elements: kept,
            index,
            table: OnceLock::new(),
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat3] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat3 {
        &self.elements[i]
    }

    pub fn contains(&self, m: &Mat3) -> bool {
        self.index.contains_key(m)
    }

    pub fn index_of(&self, m: &Mat3) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity_index(&self) -> Option<usize> {
        self.index_of(&Mat3::identity(self.modulus))
    }

    fn table(&self) -> &CayleyTable {
        self.table.get_or_init(|| {
            let n = self.elements.len();
            let prod: Vec<u32> = self
                .elements
                .par_iter()
                .flat_map_iter(|a| {
                    self.elements
                        .iter()
                        .map(move |b| self.index.get(&(a * b)).map_or(u32::MAX, |&i| i as u32))
                })
                .collect();
            let inv = self
                .elements
                .iter()
                .map(|a| {
                    a.inverse()
                        .ok()
                        .and_then(|b| self.index.get(&b).copied())
                        .map_or(u32::MAX, |i| i as u32)
                })
                .collect();
            CayleyTable { n, prod, inv }
        })
    }

    /// Index of the product `elements[i] · elements[j]`.
    ///
    /// # Panics
    /// When the product leaves the set (the group is not closed).
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        let t = self.table();
        let r = t.prod[i * t.n + j];
        assert!(r != u32::MAX, "product leaves the element set");
        r as usize
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        let r = self.table().inv[i];
        assert!(r != u32::MAX, "inverse leaves the element set");
        r as usize
    }

    /// Exhaustive check: identity present, closed under products and inverses.
    pub fn is_closed(&self) -> bool {
        let t = self.table();
        self.identity_index().is_some()
            && t.prod.iter().all(|&x| x != u32::MAX)
            && t.inv.iter().all(|&x| x != u32::MAX)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i + 1..n).all(|j| self.mul_idx(i, j) == self.mul_idx(j, i)))
    }

    /// Indices of the subgroup generated by the given element indices.
    pub fn closure_of(&self, generators: &[usize]) -> Vec<usize> {
        let id = self.identity_index().expect("group contains the identity");
        let mut seen = vec![false; self.order()];
        let mut out = vec![id];
        seen[id] = true;
        let mut gens: Vec<usize> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in &gens {
                let y = self.mul_idx(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// A new group holding the listed elements.
    pub fn subgroup(&self, indices: &[usize]) -> FiniteMatrixGroup {
        Self::from_elements(
            self.modulus,
            indices.iter().map(|&i| self.elements[i]).collect(),
        )
        .expect("elements share the group modulus")
    }

    /// Multiplicative order of element `i`.
    pub fn element_order(&self, i: usize) -> usize {
        let id = self.identity_index().expect("group contains the identity");
        let mut x = i;
        let mut n = 1;
        while x != id {
            x = self.mul_idx(x, i);
            n += 1;
        }
        n
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &FiniteMatrixGroup) -> bool {
        self.elements.iter().all(|m| other.contains(m))
    }
}

/// Breadth-first closure of the generators under right multiplication.
pub fn generate_closure(
    generators: &[Mat3],
    modulus: Modulus,
    budget: &Budget,
) -> Result<FiniteMatrixGroup> {
    let mut gens: Vec<Mat3> = Vec::new();
    for g in generators {
        if g.modulus() != modulus {
            return Err(Error::ModulusMismatch {
                left: modulus.value(),
                right: g.modulus().value(),
            });
        }
        if !g.is_identity() && !gens.contains(g) {
            gens.push(*g);
        }
    }
    let mut elements = vec![Mat3::identity(modulus)];
    let mut index: HashSet<Mat3> = elements.iter().copied().collect();
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i];
        for g in &gens {
            let y = x * *g;
            if index.insert(y) {
                elements.push(y);
                if elements.len() > budget.max_elements {
                    return Err(Error::BudgetExceeded {
                        what: "group elements",
                        limit: budget.max_elements as u64,
                    });
                }
            }
        }
        i += 1;
    }
    FiniteMatrixGroup::from_elements(modulus, elements)
}

/// The union of the three reference-axis subgroups at level `k`.
pub fn axis_generators(form: &FormSpec) -> Result<Vec<Mat3>> {
    let mut gens = Vec::new();
    for a in Axis::ALL {
        gens.extend(axis_group(a, form)?);
    }
    Ok(gens)
}

/// `G_{p^k}`: the closure of the reference-axis rotations modulo `p^k`.
pub fn rotation_group(p: u64, k: u32, budget: &Budget) -> Result<FiniteMatrixGroup> {
    let form = make_form(p, k)?;
    generate_closure(&axis_generators(&form)?, form.modulus(), budget)
}

/// `Ĝ_{p^k} = {L : Lᵀ A L ≡ A, det L ≡ 1 (mod p^k)}`.
///
/// Columns are chosen one at a time: each must have the prescribed `Q` value
/// and be orthogonal to the columns already fixed, and the determinant
/// filters the last column.
pub fn solve_defining_system(p: u64, k: u32, budget: &Budget) -> Result<FiniteMatrixGroup> {
    let form = make_form(p, k)?;
    let m = form.modulus();
    let mv = m.value();
    let space = mv.checked_pow(3).unwrap_or(u64::MAX);
    if space > budget.max_visits {
        return Err(Error::BudgetExceeded {
            what: "candidate visits",
            limit: budget.max_visits,
        });
    }
    let targets = form.gram();
    let targets = [targets.raw(0, 0), targets.raw(1, 1), targets.raw(2, 2)];
    let mut buckets: [Vec<[u64; 3]>; 3] = Default::default();
    for x0 in 0..mv {
        for x1 in 0..mv {
            for x2 in 0..mv {
                let x = [x0, x1, x2];
                let q = form.q_raw(&x);
                for (bucket, &t) in buckets.iter_mut().zip(targets.iter()) {
                    if q == t {
                        bucket.push(x);
                    }
                }
            }
        }
    }
    let visits = AtomicU64::new(space);
    let aborted = AtomicBool::new(false);
    let [c1s, c2s, c3s] = &buckets;
    let found: Vec<Mat3> = c1s
        .par_iter()
        .flat_map_iter(|c1| {
            let mut local = Vec::new();
            if aborted.load(Ordering::Relaxed) {
                return local.into_iter();
            }
            let mut count = 0u64;
            let c3_ok: Vec<&[u64; 3]> = c3s
                .iter()
                .filter(|c3| form.bilinear_raw(c1, c3) == 0)
                .collect();
            count += c3s.len() as u64;
            for c2 in c2s {
                count += 1;
                if form.bilinear_raw(c1, c2) != 0 {
                    continue;
                }
                for c3 in &c3_ok {
                    count += 1;
                    if form.bilinear_raw(c2, c3) != 0 {
                        continue;
                    }
                    let l = Mat3::from_raw_columns(m, [*c1, *c2, **c3]);
                    if l.det().is_one() {
                        local.push(l);
                    }
                }
            }
            if visits.fetch_add(count, Ordering::Relaxed) + count > budget.max_visits {
                aborted.store(true, Ordering::Relaxed);
            }
            local.into_iter()
        })
        .collect();
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded {
            what: "candidate visits",
            limit: budget.max_visits,
        });
    }
    if found.len() > budget.max_elements {
        return Err(Error::BudgetExceeded {
            what: "group elements",
            limit: budget.max_elements as u64,
        });
    }
    let mut found = found;
    found.sort_unstable_by_key(|l| *l.raw_entries());
    FiniteMatrixGroup::from_elements(m, found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(x: ModInt) -> Option<Sign> {
        if x.is_one() {
            Some(Sign::Plus)
        } else if (-x).is_one() {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

/// `M(a, b, c, d, s) = [[a, s·v·b, 0], [b, s·a, 0], [c, d, s]]` with `a² − v·b² ≡ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamElement {
    pub a: ModInt,
    pub b: ModInt,
    pub c: ModInt,
    pub d: ModInt,
    pub s: Sign,
}

impl ParamElement {
    pub fn to_matrix(&self, v: ModInt) -> Mat3 {
        let m = self.a.modulus();
        let s = m.elem(self.s.value());
        let z = m.zero();
        Mat3::from_entries([
            self.a,
            s * v * self.b,
            z,
            self.b,
            s * self.a,
            z,
            self.c,
            self.d,
            s,
        ])
        .expect("parameters share one modulus")
    }

    /// Reads the parameters off a matrix, checking the block shape and the norm condition.
    pub fn from_matrix(l: &Mat3, v: ModInt) -> Result<Self> {
        let bad = |what: &str| Error::MalformedElement(format!("{l}: {what}"));
        if !(l.get(0, 2).is_zero() && l.get(1, 2).is_zero()) {
            return Err(bad("third column is not (0, 0, ±1)"));
        }
        let s = Sign::of(l.get(2, 2)).ok_or_else(|| bad("corner entry is not ±1"))?;
        let sm = l.modulus().elem(s.value());
        let (a, b) = (l.get(0, 0), l.get(1, 0));
        if l.get(1, 1) != sm * a || l.get(0, 1) != sm * v * b {
            return Err(bad("upper-left block is not [[a, s v b], [b, s a]]"));
        }
        if !(a * a - v * b * b).is_one() {
            return Err(bad("a² − v b² ≢ 1"));
        }
        Ok(Self {
            a,
            b,
            c: l.get(2, 0),
            d: l.get(2, 1),
            s,
        })
    }

    pub fn norm_pair(&self, v: ModInt) -> NormOnePair {
        NormOnePair::new(self.a, self.b, v).expect("parameter pair satisfies the norm condition")
    }
}

impl fmt::Display for ParamElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M({}, {}, {}, {}, {})",
            self.a.signed(),
            self.b.signed(),
            self.c.signed(),
            self.d.signed(),
            self.s.value()
        )
    }
}

/// Every `M(a, b, c, d, s)` for odd `p`: `2p²(p + 1)` tuples.
pub fn parameterize_mod_p(p: u64) -> Result<Vec<ParamElement>> {
    let pairs = solve_norm_one(p)?;
    let f = pairs[0].a.modulus();
    let mut out = Vec::with_capacity(pairs.len() * (p * p * 2) as usize);
    for pair in &pairs {
        for c in f.residues() {
            for d in f.residues() {
                for s in [Sign::Plus, Sign::Minus] {
                    out.push(ParamElement {
                        a: pair.a,
                        b: pair.b,
                        c,
                        d,
                        s,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The subgroup generated by all commutators `[g, h] = g h g⁻¹ h⁻¹`.
pub fn commutator_subgroup(group: &FiniteMatrixGroup) -> FiniteMatrixGroup {
    let n = group.order();
    let comms: HashSet<usize> = (0..n)
        .into_par_iter()
        .flat_map_iter(|g| {
            (0..n).map(move |h| {
                let gh = group.mul_idx(g, h);
                group.mul_idx(group.mul_idx(gh, group.inv_idx(g)), group.inv_idx(h))
            })
        })
        .collect();
    let mut gens: Vec<usize> = comms.into_iter().collect();
    gens.sort_unstable();
    group.subgroup(&group.closure_of(&gens))
}

/// Isomorphism type of a small abelian quotient, read off its element orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    Trivial,
    Cyclic(usize),
    Klein,
    Other {
        order: usize,
        element_orders: Vec<usize>,
    },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => f.write_str("trivial"),
            GroupKind::Cyclic(n) => write!(f, "Z/{n}"),
            GroupKind::Klein => f.write_str("Z/2 x Z/2"),
            GroupKind::Other { order, .. } => write!(f, "order-{order} group"),
        }
    }
}

/// `G / [G, G]` as cosets with a multiplication table.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub commutator_order: usize,
    /// Coset id of each element of the parent group.
    pub coset_of: Vec<usize>,
    pub representatives: Vec<Mat3>,
    pub table: Vec<Vec<usize>>,
    pub element_orders: Vec<usize>,
    pub kind: GroupKind,
}

impl Abelianization {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }
}

pub fn abelianization(group: &FiniteMatrixGroup, derived: &FiniteMatrixGroup) -> Abelianization {
    let n = group.order();
    let h: Vec<usize> = derived
        .elements()
        .iter()
        .filter_map(|m| group.index_of(m))
        .collect();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(g);
        for &x in &h {
            coset_of[group.mul_idx(g, x)] = id;
        }
    }
    let q = reps.len();
    let table: Vec<Vec<usize>> = (0..q)
        .map(|i| {
            (0..q)
                .map(|j| coset_of[group.mul_idx(reps[i], reps[j])])
                .collect()
        })
        .collect();
    let identity = coset_of[group.identity_index().expect("group contains the identity")];
    let element_orders: Vec<usize> = (0..q)
        .map(|i| {
            let (mut x, mut k) = (i, 1);
            while x != identity {
                x = table[x][i];
                k += 1;
            }
            k
        })
        .collect();
    let kind = if q == 1 {
        GroupKind::Trivial
    } else if element_orders.contains(&q) {
        GroupKind::Cyclic(q)
    } else if q == 4 && element_orders.iter().all(|&o| o <= 2) {
        GroupKind::Klein
    } else {
        let mut orders = element_orders.clone();
        orders.sort_unstable();
        GroupKind::Other {
            order: q,
            element_orders: orders,
        }
    };
    Abelianization {
        commutator_order: derived.order(),
        coset_of,
        representatives: reps.iter().map(|&i| *group.element(i)).collect(),
        table,
        element_orders,
        kind,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Mat3,
    /// Element indices in the parent group.
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Orbits of the conjugation action, in order of first appearance.
pub fn conjugacy_classes(group: &FiniteMatrixGroup) -> Vec<ConjugacyClass> {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for g in 0..n {
            let y = group.mul_idx(group.mul_idx(g, x), group.inv_idx(g));
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                members.push(y);
            }
        }
        members.sort_unstable();
        classes.push(ConjugacyClass {
            representative: *group.element(x),
            members,
        });
    }
    classes
}

/// A largest abelian normal subgroup, searched over unions of conjugacy classes.
///
/// Only classes that commute elementwise with each other (and with themselves)
/// can share an abelian subgroup, so the search walks cliques of the
/// class-commutation graph and keeps the largest union closed under product.
pub fn maximal_abelian_normal_subgroup(
    group: &FiniteMatrixGroup,
    classes: &[ConjugacyClass],
    budget: &Budget,
) -> Result<FiniteMatrixGroup> {
    let c = classes.len();
    let commute = |a: &ConjugacyClass, b: &ConjugacyClass| {
        a.members.iter().all(|&x| {
            b.members
                .iter()
                .all(|&y| group.mul_idx(x, y) == group.mul_idx(y, x))
        })
    };
    let compat: Vec<Vec<bool>> = (0..c)
        .map(|i| (0..c).map(|j| commute(&classes[i], &classes[j])).collect())
        .collect();
    let id = group.identity_index().expect("group contains the identity");
    let id_class = classes
        .iter()
        .position(|cl| cl.members.contains(&id))
        .expect("identity has a class");
    let candidates: Vec<usize> = (0..c)
        .filter(|&i| i != id_class && compat[i][i] && compat[i][id_class])
        .collect();

    struct Search<'a> {
        group: &'a FiniteMatrixGroup,
        classes: &'a [ConjugacyClass],
        compat: &'a [Vec<bool>],
        candidates: &'a [usize],
        best: Vec<usize>,
        best_size: usize,
        visits: u64,
        cap: u64,
    }

    impl Search<'_> {
        fn closed(&self, chosen: &[usize]) -> bool {
            let mut inside = vec![false; self.group.order()];
            let elems: Vec<usize> = chosen
                .iter()
                .flat_map(|&i| self.classes[i].members.iter().copied())
                .collect();
            for &e in &elems {
                inside[e] = true;
            }
            elems
                .iter()
                .all(|&x| elems.iter().all(|&y| inside[self.group.mul_idx(x, y)]))
        }

        fn walk(&mut self, chosen: &mut Vec<usize>, size: usize, from: usize) -> Result<()> {
            self.visits += 1;
            if self.visits > self.cap {
                return Err(Error::BudgetExceeded {
                    what: "class-union visits",
                    limit: self.cap,
                });
            }
            if size > self.best_size && self.group.order() % size == 0 && self.closed(chosen) {
                self.best = chosen.clone();
                self.best_size = size;
            }
            for pos in from..self.candidates.len() {
                let cand = self.candidates[pos];
                if chosen.iter().all(|&i| self.compat[i][cand]) {
                    chosen.push(cand);
                    let s = size + self.classes[cand].size();
                    self.walk(chosen, s, pos + 1)?;
                    chosen.pop();
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        group,
        classes,
        compat: &compat,
        candidates: &candidates,
        best: vec![id_class],
        best_size: 1,
        visits: 0,
        cap: budget.max_visits,
    };
    let mut chosen = vec![id_class];
    search.walk(&mut chosen, 1, 0)?;
    let mut indices: Vec<usize> = search
        .best
        .iter()
        .flat_map(|&i| classes[i].members.iter().copied())
        .collect();
    indices.sort_unstable();
    Ok(group.subgroup(&indices))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OneDimCharacter {
    Det,
    S,
    T,
    ST,
}

impl OneDimCharacter {
    pub const ALL: [OneDimCharacter; 4] = [
        OneDimCharacter::Det,
        OneDimCharacter::S,
        OneDimCharacter::T,
        OneDimCharacter::ST,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OneDimCharacter::Det => "det",
            OneDimCharacter::S => "s",
            OneDimCharacter::T => "t",
            OneDimCharacter::ST => "st",
        }
    }
}

/// The four one-dimensional characters `det, s, t, st` of `G_p`, `p` odd.
///
/// `t` is `(−1)^e` where `(a, b) = gen^e` in the norm-one group; for `p = 3`
/// this equals `a² − b²` and for `p = 5` it equals `sign(a)` with
/// representatives in `{−2, …, 2}`.
#[derive(Debug, Clone, Copy)]
pub struct OneDimCharacters {
    v: ModInt,
    gen: NormOnePair,
}

pub fn one_dim_characters(p: u64) -> Result<OneDimCharacters> {
    let gen = find_generator(p)?;
    Ok(OneDimCharacters { v: gen.v(), gen })
}

impl OneDimCharacters {
    pub fn p(&self) -> u64 {
        self.v.modulus().p()
    }

    pub fn v(&self) -> ModInt {
        self.v
    }

    /// `t` through the cyclic structure of the norm-one group.
    pub fn t(&self, m: &ParamElement) -> i64 {
        let e = discrete_log(&self.gen, &m.norm_pair(self.v))
            .expect("gen generates the norm-one group");
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `t` from the closed forms: `a² − b²` for `p = 3`, `sign(a)` for `p = 5`.
    pub fn t_closed_form(&self, m: &ParamElement) -> Option<i64> {
        match self.p() {
            3 => Some((m.a * m.a - m.b * m.b).signed()),
            5 => Some(m.a.signed().signum()),
            _ => None,
        }
    }

    pub fn value(&self, chi: OneDimCharacter, m: &ParamElement) -> i64 {
        match chi {
            OneDimCharacter::Det => 1,
            OneDimCharacter::S => m.s.value(),
            OneDimCharacter::T => self.t(m),
            OneDimCharacter::ST => m.s.value() * self.t(m),
        }
    }

    pub fn value_on_matrix(&self, chi: OneDimCharacter, l: &Mat3) -> Result<i64> {
        Ok(self.value(chi, &ParamElement::from_matrix(l, self.v)?))
    }
}

/// Orders of the closure and solver groups at one level, and whether one contains the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HenselReport {
    pub p: u64,
    pub k: u32,
    pub closure_order: usize,
    pub solver_order: usize,
    pub equal: bool,
    pub contained: bool,
}

pub fn hensel_compare(p: u64, k: u32, budget: &Budget) -> Result<HenselReport> {
    let closure = rotation_group(p, k, budget)?;
    let solver = solve_defining_system(p, k, budget)?;
    let contained = closure.is_subset_of(&solver);
    Ok(HenselReport {
        p,
        k,
        closure_order: closure.order(),
        solver_order: solver.order(),
        equal: contained && closure.order() == solver.order(),
        contained,
    })
}
