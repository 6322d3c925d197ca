//! Candidate irreducible-degree spectra from `Σ d² = |G|` and divisibility constraints.

use serde::Serialize;

/// Degrees `d > 1` still to be found: `slot_count` of them, squares summing to `residual_sum`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProblem {
    pub residual_sum: u64,
    pub slot_count: usize,
    pub allowed_degrees: Vec<u64>,
}

impl DegreeProblem {
    /// Sorts and deduplicates the allowed degrees, dropping any `≤ 1`.
    pub fn new(
        residual_sum: u64,
        slot_count: usize,
        allowed: impl IntoIterator<Item = u64>,
    ) -> Self {
        let mut allowed_degrees: Vec<u64> = allowed.into_iter().filter(|&d| d > 1).collect();
        allowed_degrees.sort_unstable();
        allowed_degrees.dedup();
        Self {
            residual_sum,
            slot_count,
            allowed_degrees,
        }
    }

    /// The problem left after the one-dimensional irreps of a group are removed,
    /// with degrees restricted to divisors of the order.
    pub fn for_group(order: u64, classes: usize, one_irreps: usize) -> Self {
        Self::new(
            order - one_irreps as u64,
            classes - one_irreps,
            divisors(order),
        )
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// All non-decreasing degree lists solving the problem, in lexicographic order.
pub fn solve_degrees(prob: &DegreeProblem) -> Vec<Vec<u64>> {
    fn walk(
        allowed: &[u64],
        from: usize,
        slots: usize,
        rest: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max_sq = allowed.last().map_or(0, |d| d * d);
        for i in from..allowed.len() {
            let d = allowed[i];
            let sq = d * d;
            // the remaining slots take at least d² and at most max_sq each
            if sq * slots as u64 > rest {
                break;
            }
            if max_sq * (slots as u64) < rest {
                return;
            }
            cur.push(d);
            walk(allowed, i, slots - 1, rest - sq, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(
        &prob.allowed_degrees,
        0,
        prob.slot_count,
        prob.residual_sum,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Keeps lists whose every degree divides `index`.
pub fn constrain_by_ito(candidates: &[Vec<u64>], index: u64) -> Vec<Vec<u64>> {
    candidates
        .iter()
        .filter(|c| c.iter().all(|&d| index % d == 0))
        .cloned()
        .collect()
}

/// Keeps lists with at least `min_twos` entries equal to 2.
pub fn constrain_by_min_two_count(candidates: &[Vec<u64>], min_twos: usize) -> Vec<Vec<u64>> {
    candidates
        .iter()
        .filter(|c| c.iter().filter(|&&d| d == 2).count() >= min_twos)
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    DividesOrder { order: u64 },
    DividesIndex { index: u64, subgroup_order: u64 },
    MinTwos { count: usize },
}

/// Degree analysis for one group. `candidates` are full spectra, one-dimensional irreps included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub group: String,
    pub order: u64,
    pub classes: usize,
    pub one_irreps: usize,
    pub constraints: Vec<Constraint>,
    pub candidates: Vec<Vec<u64>>,
}

/// Runs the solver, then the optional abelian-normal-subgroup and 2-irrep filters.
pub fn degree_report(
    group: &str,
    order: u64,
    classes: usize,
    one_irreps: usize,
    abelian_normal_order: Option<u64>,
    min_twos: Option<usize>,
) -> DegreeReport {
    let mut constraints = vec![Constraint::DividesOrder { order }];
    let mut cands = solve_degrees(&DegreeProblem::for_group(order, classes, one_irreps));
    if let Some(a) = abelian_normal_order {
        let index = order / a;
        constraints.push(Constraint::DividesIndex {
            index,
            subgroup_order: a,
        });
        cands = constrain_by_ito(&cands, index);
    }
    if let Some(n) = min_twos {
        constraints.push(Constraint::MinTwos { count: n });
        cands = constrain_by_min_two_count(&cands, n);
    }
    let candidates = cands
        .into_iter()
        .map(|c| std::iter::repeat_n(1, one_irreps).chain(c).collect())
        .collect();
    DegreeReport {
        group: group.to_string(),
        order,
        classes,
        one_irreps,
        constraints,
        candidates,
    }
}
