//! The structural summary of `G_p`: order, commutator subgroup, abelianization,
//! conjugacy classes, one-dimensional characters and degree candidates.

use serde::Serialize;

use crate::degrees::{degree_report, DegreeReport};
use crate::error::Result;
use crate::form::make_form;
use crate::group::{
    abelianization, commutator_subgroup, conjugacy_classes, maximal_abelian_normal_subgroup,
    one_dim_characters, rotation_group, Budget, FiniteMatrixGroup, GroupKind, OneDimCharacter,
    ParamElement,
};
use crate::qubit::{is_irreducible, variant_count, QubitRep, TOL};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub size: usize,
    pub rep: [[i64; 3]; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub name: String,
    pub values: Vec<i64>,
}

/// Values of the one-dimensional characters on one representative per coset of `[G, G]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub cosets: Vec<String>,
    pub rows: Vec<CharacterRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralReport {
    pub p: u64,
    pub order: usize,
    pub commutator_order: usize,
    pub abelianization: String,
    pub abelianization_kind: GroupKind,
    pub class_count: usize,
    pub class_sizes: Vec<usize>,
    pub classes: Vec<ClassEntry>,
    pub one_characters: CharacterTable,
    pub abelian_normal_order: usize,
    pub abelian_normal_index: usize,
    pub irreducible_qubits: usize,
    pub degrees: DegreeReport,
}

fn character_table(p: u64, group: &FiniteMatrixGroup, reps: &[usize]) -> Result<CharacterTable> {
    if p == 2 {
        // the quotient S_3 / A_3: trivial and sign, read off the permutation matrix mod 2
        let sign = |i: usize| {
            let l = group.element(i);
            let fixed = (0..3).filter(|&j| l.get(j, j).is_one()).count();
            if fixed == 1 {
                -1
            } else {
                1
            }
        };
        return Ok(CharacterTable {
            cosets: reps.iter().map(|&i| group.element(i).to_string()).collect(),
            rows: vec![
                CharacterRow {
                    name: "trivial".into(),
                    values: vec![1; reps.len()],
                },
                CharacterRow {
                    name: "sign".into(),
                    values: reps.iter().map(|&i| sign(i)).collect(),
                },
            ],
        });
    }
    let chi = one_dim_characters(p)?;
    let params: Vec<ParamElement> = reps
        .iter()
        .map(|&i| ParamElement::from_matrix(group.element(i), chi.v()))
        .collect::<Result<_>>()?;
    Ok(CharacterTable {
        cosets: params.iter().map(|m| m.to_string()).collect(),
        rows: OneDimCharacter::ALL
            .iter()
            .map(|&c| CharacterRow {
                name: c.name().into(),
                values: params.iter().map(|m| chi.value(c, m)).collect(),
            })
            .collect(),
    })
}

/// Number of qubit variants whose images are irreducible with pairwise distinct characters.
fn irreducible_qubits(p: u64, group: &FiniteMatrixGroup) -> Result<usize> {
    let mut traces: Vec<Vec<f64>> = Vec::new();
    for v in 1..=variant_count(p)? {
        let images = QubitRep::new(p, v)?.images(group)?;
        if !is_irreducible(&images) {
            continue;
        }
        let t: Vec<f64> = images.iter().map(|j| j.trace().re).collect();
        let same = |u: &Vec<f64>| u.iter().zip(&t).all(|(a, b)| (a - b).abs() < TOL);
        if !traces.iter().any(same) {
            traces.push(t);
        }
    }
    Ok(traces.len())
}

pub fn structural_report(p: u64, budget: &Budget) -> Result<StructuralReport> {
    make_form(p, 1)?;
    let group = rotation_group(p, 1, budget)?;
    let derived = commutator_subgroup(&group);
    let ab = abelianization(&group, &derived);
    let classes = conjugacy_classes(&group);
    let mut class_sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
    class_sizes.sort_unstable();
    let normal = maximal_abelian_normal_subgroup(&group, &classes, budget)?;
    let reps: Vec<usize> = ab
        .representatives
        .iter()
        .map(|m| group.index_of(m).expect("coset rep in group"))
        .collect();
    let one_characters = character_table(p, &group, &reps)?;
    let twos = irreducible_qubits(p, &group)?;
    let degrees = degree_report(
        &format!("G_{p}"),
        group.order() as u64,
        classes.len(),
        ab.order(),
        Some(normal.order() as u64),
        Some(twos),
    );
    Ok(StructuralReport {
        p,
        order: group.order(),
        commutator_order: derived.order(),
        abelianization: ab.kind.to_string(),
        abelianization_kind: ab.kind.clone(),
        class_count: classes.len(),
        class_sizes,
        classes: classes
            .iter()
            .map(|c| ClassEntry {
                size: c.size(),
                rep: c.representative.signed_rows(),
            })
            .collect(),
        one_characters,
        abelian_normal_order: normal.order(),
        abelian_normal_index: group.order() / normal.order(),
        irreducible_qubits: twos,
        degrees,
    })
}
