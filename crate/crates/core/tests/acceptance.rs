//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p so3p --test acceptance`.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use so3p::degrees::{
    constrain_by_ito, constrain_by_min_two_count, degree_report, divisors, solve_degrees,
    DegreeProblem,
};
use so3p::dihedral::{from_dihedral, project_minor, to_dihedral, DihedralElement, MinorMat2};
use so3p::group::{
    abelianization, commutator_subgroup, conjugacy_classes, hensel_compare,
    maximal_abelian_normal_subgroup, one_dim_characters, rotation_group, solve_defining_system,
    Budget, GroupKind, OneDimCharacter, ParamElement,
};
use so3p::modular::is_prime;
use so3p::norm_one::{find_generator, solve_norm_one};
use so3p::qubit::{
    commutant_dimension, generator_lift, homomorphism_deviation, run_checks, tau_prime, unitarize,
    QubitRep, S3Element, TOL,
};
use so3p::rotation::cardano_table;
use so3p::{make_form, ComplexMat2, FiniteMatrixGroup, Mat3};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget() -> Budget {
    Budget::default()
}

fn group(p: u64) -> FiniteMatrixGroup {
    rotation_group(p, 1, &budget()).expect("G_p enumerates")
}

/// Independent oracle: every 3×3 matrix mod p with `LᵀAL = A` and `det L = 1`, by plain integer loops.
fn brute_force_order(p: u64) -> usize {
    let p = p as i64;
    let form = make_form(p as u64, 1).unwrap();
    let a: Vec<i64> = (0..3)
        .map(|i| form.gram().get(i, i).value() as i64)
        .collect();
    let vecs: Vec<[i64; 3]> = (0..p * p * p)
        .map(|n| [n % p, (n / p) % p, n / (p * p)])
        .collect();
    let b = |x: &[i64; 3], y: &[i64; 3]| {
        (0..3)
            .map(|i| a[i] * x[i] * y[i])
            .sum::<i64>()
            .rem_euclid(p)
    };
    let mut count = 0;
    for c1 in vecs.iter().filter(|x| b(x, x) == a[0] % p) {
        for c2 in vecs.iter().filter(|x| b(x, x) == a[1] % p && b(c1, x) == 0) {
            for c3 in vecs
                .iter()
                .filter(|x| b(x, x) == a[2] % p && b(c1, x) == 0 && b(c2, x) == 0)
            {
                let det = c1[0] * (c2[1] * c3[2] - c2[2] * c3[1])
                    - c2[0] * (c1[1] * c3[2] - c1[2] * c3[1])
                    + c3[0] * (c1[1] * c2[2] - c1[2] * c2[1]);
                if det.rem_euclid(p) == 1 {
                    count += 1;
                }
            }
        }
    }
    count
}

fn c1_orders() -> Check {
    let mut parts = Vec::new();
    for p in [3u64, 5, 7, 11] {
        let n = solve_defining_system(p, 1, &budget())
            .map_err(|e| e.to_string())?
            .order();
        let closed = (2 * p * p * (p + 1)) as usize;
        ensure(n == closed, || {
            format!("p={p}: solver {n}, 2p²(p+1) = {closed}")
        })?;
        if p <= 5 {
            let oracle = brute_force_order(p);
            ensure(n == oracle, || {
                format!("p={p}: solver {n}, brute force {oracle}")
            })?;
        }
        parts.push(format!("{p}:{n}"));
    }
    ensure(parts == ["3:72", "5:300", "7:784", "11:2904"], || {
        format!("{parts:?}")
    })?;
    Ok(parts.join(" "))
}

fn c2_closure_equals_solver() -> Check {
    for p in [3u64, 5, 7] {
        let g = group(p);
        let h = solve_defining_system(p, 1, &budget()).map_err(|e| e.to_string())?;
        ensure(g.order() == h.order(), || {
            format!("p={p}: {} vs {}", g.order(), h.order())
        })?;
        ensure(g.elements().iter().all(|m| h.contains(m)), || {
            format!("p={p}: closure element missing from solver")
        })?;
        ensure(h.elements().iter().all(|m| g.contains(m)), || {
            format!("p={p}: solver element missing from closure")
        })?;
    }
    Ok("p = 3, 5, 7 element-for-element".into())
}

fn c3_cardano() -> Check {
    let mut parts = Vec::new();
    for p in [3u64, 5, 7] {
        let form = make_form(p, 1).unwrap();
        let table = cardano_table(&form).map_err(|e| e.to_string())?;
        let g = group(p);
        ensure(table.len() == g.order(), || {
            format!("p={p}: {} products vs |G| = {}", table.len(), g.order())
        })?;
        for l in g.elements() {
            let decs = table
                .get(l)
                .ok_or_else(|| format!("p={p}: {l} has no decomposition"))?;
            ensure(decs.len() == 2, || {
                format!("p={p}: {l} has {} decompositions", decs.len())
            })?;
            for d in decs {
                let prod =
                    so3p::rotation::cardano_compose(&form, d.factors).map_err(|e| e.to_string())?;
                ensure(prod == *l, || format!("p={p}: {d} does not compose to {l}"))?;
            }
        }
        parts.push(format!("{p}: {}×2", g.order()));
    }
    Ok(parts.join(", "))
}

fn c4_commutators() -> Check {
    let mut parts = Vec::new();
    for (p, expect) in [(3u64, 18usize), (5, 75)] {
        let g = group(p);
        let d = commutator_subgroup(&g);
        ensure(d.order() == expect, || {
            format!("|[G_{p}, G_{p}]| = {}", d.order())
        })?;
        let ab = abelianization(&g, &d);
        ensure(ab.kind == GroupKind::Klein, || {
            format!("Ab(G_{p}) is {}", ab.kind)
        })?;
        // oracle: a quotient of order 4 with g² ∈ [G, G] for every g has exponent 2
        let squares_inside = g.elements().iter().all(|x| d.contains(&(*x * *x)));
        ensure(g.order() / d.order() == 4 && squares_inside, || {
            format!("p={p}: quotient is not elementary abelian of order 4")
        })?;
        parts.push(format!("|[G_{p},G_{p}]| = {}", d.order()));
    }
    Ok(format!("{}, both Klein", parts.join(", ")))
}

fn c5_classes() -> Check {
    let want3 = vec![1, 4, 4, 6, 6, 9, 12, 12, 18];
    let want5 = vec![1, 6, 6, 6, 6, 15, 15, 25, 30, 30, 30, 30, 50, 50];
    for (p, want) in [(3u64, &want3), (5, &want5)] {
        let g = group(p);
        let mut sizes: Vec<usize> = conjugacy_classes(&g).iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        ensure(sizes == *want, || format!("p={p}: {sizes:?}"))?;
        // oracle: orbit-stabilizer, class size = |G| / |centralizer|
        let mut oracle: Vec<usize> = Vec::new();
        let mut seen: HashSet<Mat3> = HashSet::new();
        for x in g.elements() {
            if seen.contains(x) {
                continue;
            }
            let cent = g.elements().iter().filter(|y| *x * **y == **y * *x).count();
            for y in g.elements() {
                seen.insert(*y * *x * y.inverse().unwrap());
            }
            oracle.push(g.order() / cent);
        }
        oracle.sort_unstable();
        ensure(oracle == *want, || {
            format!("p={p}: centralizer oracle {oracle:?}")
        })?;
    }
    Ok(format!(
        "G_3 {} classes, G_5 {} classes",
        want3.len(),
        want5.len()
    ))
}

/// Oracle: all multisets with repetition, filtered by the square sum.
fn brute_degrees(prob: &DegreeProblem) -> Vec<Vec<u64>> {
    fn rec(
        allowed: &[u64],
        from: usize,
        slots: usize,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if slots == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..allowed.len() {
            cur.push(allowed[i]);
            rec(allowed, i, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(
        &prob.allowed_degrees,
        0,
        prob.slot_count,
        &mut Vec::new(),
        &mut all,
    );
    all.retain(|c| c.iter().map(|d| d * d).sum::<u64>() == prob.residual_sum);
    all
}

fn c6_degrees() -> Check {
    for sum in 1..=400u64 {
        for slots in 1..=4 {
            for allowed in [
                vec![2u64, 3, 4, 6, 12],
                vec![2, 4, 8],
                vec![2, 3, 5, 7, 9, 10],
            ] {
                let prob = DegreeProblem::new(sum, slots, allowed);
                ensure(solve_degrees(&prob) == brute_degrees(&prob), || {
                    format!("solver ≠ oracle at {prob:?}")
                })?;
            }
        }
    }

    let invariants = |p: u64| {
        let g = group(p);
        let d = commutator_subgroup(&g);
        let classes = conjugacy_classes(&g);
        let a = maximal_abelian_normal_subgroup(&g, &classes, &budget()).unwrap();
        (
            g.order() as u64,
            classes.len(),
            abelianization(&g, &d).order(),
            a.order() as u64,
        )
    };
    let (n3, c3, o3, _) = invariants(3);
    let r3 = degree_report("G_3", n3, c3, o3, None, None);
    ensure(
        r3.candidates == vec![vec![1, 1, 1, 1, 2, 4, 4, 4, 4]],
        || format!("G_3: {:?}", r3.candidates),
    )?;

    let (n5, c5, o5, a5) = invariants(5);
    ensure((n5, c5, o5, n5 / a5) == (300, 14, 4, 12), || {
        format!("G_5 invariants {n5} {c5} {o5} {a5}")
    })?;
    let raw = solve_degrees(&DegreeProblem::new(n5 - o5 as u64, c5 - o5, divisors(n5)));
    let ito = constrain_by_ito(&raw, n5 / a5);
    let rows = vec![
        vec![2, 2, 3, 3, 3, 3, 6, 6, 6, 12],
        vec![2, 2, 6, 6, 6, 6, 6, 6, 6, 6],
        vec![2, 4, 4, 4, 4, 4, 4, 4, 6, 12],
    ];
    ensure(ito == rows, || {
        format!("G_5 after the index constraint: {ito:?}")
    })?;
    let two = constrain_by_min_two_count(&ito, 2);
    ensure(two == rows[..2].to_vec(), || {
        format!("G_5 with two 2-irreps: {two:?}")
    })?;
    Ok("G_3 unique; G_5 3 rows → 2; oracle agrees for sums ≤ 400".into())
}

fn c7_norm_one() -> Check {
    let mut count = 0;
    for p in (3..=97u64).filter(|&n| is_prime(n)) {
        let sols = solve_norm_one(p).map_err(|e| e.to_string())?;
        ensure(sols.len() as u64 == p + 1, || {
            format!("p={p}: {} solutions", sols.len())
        })?;
        let g = find_generator(p).map_err(|e| e.to_string())?;
        let powers: HashSet<(i64, i64)> = (0..=p).map(|e| g.pow(e).signed()).collect();
        ensure(powers.len() as u64 == p + 1, || {
            format!("p={p}: generator reaches {} elements", powers.len())
        })?;
        count += 1;
    }
    let g3 = find_generator(3).unwrap();
    let g5 = find_generator(5).unwrap();
    ensure(g3.signed() == (0, 1) && g3.order() == 4, || {
        format!("p=3 generator {g3}")
    })?;
    ensure(g5.signed() == (-2, 1) && g5.order() == 6, || {
        format!("p=5 generator {g5}")
    })?;
    Ok(format!(
        "{count} odd primes ≤ 97 cyclic; (0,1) order 4, (−2,1) order 6"
    ))
}

fn c8_dihedral() -> Check {
    let mut count = 0;
    for p in (3..=23u64).filter(|&n| is_prime(n)) {
        let gen = find_generator(p).unwrap();
        let (c, z) = (MinorMat2::c(&gen), MinorMat2::z(gen.v()));
        ensure(c.pow(p + 1).is_identity(), || format!("p={p}: C^(p+1) ≠ 1"))?;
        ensure(z.mul(&z).is_identity(), || format!("p={p}: Z² ≠ 1"))?;
        ensure(z.mul(&c).mul(&z) == c.inv(), || format!("p={p}: ZCZ ≠ C⁻¹"))?;
        let n = p + 1;
        let elems = DihedralElement::all(n);
        let minors: Vec<MinorMat2> = elems.iter().map(|d| from_dihedral(d, &gen)).collect();
        ensure(
            minors.iter().collect::<HashSet<_>>().len() as u64 == 2 * n,
            || format!("p={p}: not injective"),
        )?;
        for (d1, m1) in elems.iter().zip(&minors) {
            ensure(to_dihedral(m1, &gen).ok() == Some(*d1), || {
                format!("p={p}: φ(φ⁻¹({d1})) ≠ {d1}")
            })?;
            for (d2, m2) in elems.iter().zip(&minors) {
                ensure(
                    to_dihedral(&m1.mul(m2), &gen).ok() == Some(d1.mul(d2)),
                    || format!("p={p}: φ not multiplicative"),
                )?;
            }
        }
        count += 1;
    }
    // the minor image of G_p is all of D_{p+1}
    for p in [3u64, 5, 7] {
        let g = group(p);
        let gen = find_generator(p).unwrap();
        let image: HashSet<DihedralElement> = g
            .elements()
            .iter()
            .map(|l| to_dihedral(&project_minor(l, gen.v()).unwrap(), &gen).unwrap())
            .collect();
        ensure(image.len() as u64 == 2 * (p + 1), || {
            format!("p={p}: minor image has {} elements", image.len())
        })?;
    }
    Ok(format!("{count} primes ≤ 23"))
}

fn c9_qubits() -> Check {
    let h = 3f64.sqrt() / 2.0;
    let real = |r: [[f64; 2]; 2]| ComplexMat2::from_real(r);
    let eval = |p, v, name: &str| {
        QubitRep::new(p, v)
            .unwrap()
            .eval_mod_p(&generator_lift(p, name).unwrap())
            .unwrap()
    };

    ensure(eval(3, 1, "C") == real([[0.0, -1.0], [1.0, 0.0]]), || {
        "J_3(C)".into()
    })?;
    ensure(eval(3, 1, "Z") == real([[1.0, 0.0], [0.0, -1.0]]), || {
        "J_3(Z)".into()
    })?;
    ensure(
        eval(5, 1, "C").approx_eq(&real([[0.5, -h], [h, 0.5]]), TOL),
        || "J_5^(1)(C)".into(),
    )?;
    ensure(
        eval(5, 1, "Z").approx_eq(&real([[1.0, 0.0], [0.0, -1.0]]), TOL),
        || "J_5^(1)(Z)".into(),
    )?;
    ensure(
        eval(5, 2, "C").approx_eq(&real([[-0.5, -h], [h, -0.5]]), TOL),
        || "J_5^(2)(C)".into(),
    )?;
    ensure(
        eval(2, 1, "(12)") == real([[-1.0, 1.0], [0.0, 1.0]]),
        || "J_2((12))".into(),
    )?;
    ensure(
        eval(2, 1, "(23)") == real([[1.0, 0.0], [1.0, -1.0]]),
        || "J_2((23))".into(),
    )?;

    let mut kernels = Vec::new();
    for (p, v) in [(3u64, 1u64), (5, 1), (5, 2), (2, 1)] {
        let rep = QubitRep::new(p, v).unwrap();
        let g = solve_defining_system(p, 1, &budget()).unwrap();
        let c = run_checks(&rep, &g).map_err(|e| e.to_string())?;
        let images = rep.images(&g).unwrap();
        let dev = homomorphism_deviation(&g, &images);
        ensure(dev < TOL, || {
            format!("J(p={p}, v={v}) homomorphism deviation {dev:e}")
        })?;
        if p == 3 || p == 2 {
            ensure(dev == 0.0, || {
                format!("J(p={p}) deviation {dev:e} on integer entries")
            })?;
        }
        ensure(commutant_dimension(&images) == 1, || {
            format!("J(p={p}, v={v}) reducible")
        })?;
        ensure(c.unitarized_deviation < TOL, || {
            format!(
                "J(p={p}, v={v}) unitarize deviation {:e}",
                c.unitarized_deviation
            )
        })?;
        kernels.push(((p, v), c.image_kernel_size));
    }
    let k51 = kernels.iter().find(|(pv, _)| *pv == (5, 1)).unwrap().1;
    let k52 = kernels.iter().find(|(pv, _)| *pv == (5, 2)).unwrap().1;
    ensure((k51, k52) == (1, 2), || {
        format!("image kernels J_5^(1) {k51}, J_5^(2) {k52}")
    })?;

    let s3: Vec<ComplexMat2> = [
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ]
    .iter()
    .map(|&x| tau_prime(&S3Element::new(x).unwrap()))
    .collect();
    let u = unitarize(&s3);
    ensure(u.images.iter().all(|j| j.is_unitary(TOL)), || {
        "unitarized τ' not unitary".into()
    })?;
    Ok("generator images, homomorphism, irreducibility, kernels 1/2, unitarity".into())
}

fn c10_orthogonality() -> Check {
    for p in [3u64, 5] {
        let chi = one_dim_characters(p).unwrap();
        let g = group(p);
        let params: Vec<ParamElement> = g
            .elements()
            .iter()
            .map(|l| ParamElement::from_matrix(l, chi.v()).unwrap())
            .collect();
        for a in OneDimCharacter::ALL {
            for b in OneDimCharacter::ALL {
                let s: i64 = params
                    .iter()
                    .map(|m| chi.value(a, m) * chi.value(b, m))
                    .sum();
                let want = if a == b { g.order() as i64 } else { 0 };
                ensure(s == want, || {
                    format!("p={p}: ⟨{}, {}⟩ = {s}", a.name(), b.name())
                })?;
            }
        }
    }
    Ok("det, s, t, st on G_3 and G_5".into())
}

fn c11_hensel() -> Check {
    let r = hensel_compare(3, 2, &budget()).map_err(|e| e.to_string())?;
    ensure(r.contained, || "G_9 ⊄ Ĝ_9".into())?;
    Ok(format!(
        "|G_9| = {}, |Ĝ_9| = {}, equal: {} (reported), contained: true",
        r.closure_order, r.solver_order, r.equal
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, Option<u64>, fn() -> Check)> = vec![
        (1, "group orders 72, 300, 784, 2904", Some(60), c1_orders),
        (
            2,
            "closure equals solver at k = 1",
            None,
            c2_closure_equals_solver,
        ),
        (
            3,
            "exactly two Cardano decompositions",
            Some(30),
            c3_cardano,
        ),
        (
            4,
            "commutator subgroups and abelianizations",
            None,
            c4_commutators,
        ),
        (5, "conjugacy class sizes", None, c5_classes),
        (6, "irreducible degree candidates", None, c6_degrees),
        (
            7,
            "norm-one group is cyclic of order p + 1",
            None,
            c7_norm_one,
        ),
        (8, "dihedral bridge", None, c8_dihedral),
        (9, "qubit representations", Some(60), c9_qubits),
        (
            10,
            "one-dimensional character orthogonality",
            None,
            c10_orthogonality,
        ),
        (11, "Hensel probe at 9", Some(600), c11_hensel),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(secs) => {
                Err(format!("took {:.1}s, limit {secs}s", elapsed.as_secs_f64()))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!(
                "criterion {id:>2} PASS  {name}: {detail} [{:.2}s]",
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {id:>2} FAIL  {name}: {why} [{:.2}s]",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
