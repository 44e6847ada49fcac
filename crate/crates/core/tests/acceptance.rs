//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linmatch::enumerate::{
    enumerate_bases, enumerate_subspaces, gaussian_binomial, gl_order, DEFAULT_CAP,
};
use linmatch::group::{find_matching, matching_property_scan, GroupDescriptor, GroupSubset};
use linmatch::matching::{
    automatch, dim_criterion, is_matched, match_basis, matching_property_prediction,
    non_matchable_witness, random_basis, random_invertible, refined_guarantee, space_matched,
    CriterionOutcome, MatchOutcome, SpaceMode, SpaceVerdict, DEFAULT_SUBSET_CAP,
};
use linmatch::oracle::{brute_force_match, brute_force_transversal};
use linmatch::strong::{is_strong_matching, strong_matching_exists};
use linmatch::sweep::{random_subspace, run_sweep, SweepParams, SweepTask};
use linmatch::transversal::{free_transversal, TransversalResult};
use linmatch::{Basis, ExtensionField, Subspace};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn field(p: u64, k: usize) -> ExtensionField {
    ExtensionField::new(p, k, None).unwrap()
}

fn subspaces(f: &ExtensionField, d: usize) -> Vec<Subspace> {
    enumerate_subspaces(f.p(), f.k(), d, DEFAULT_CAP)
        .unwrap()
        .collect()
}

fn bases(s: &Subspace) -> Vec<Basis> {
    enumerate_bases(s, DEFAULT_CAP).unwrap().collect()
}

/// 1 ∈ S, decided by listing S.
fn has_one(s: &Subspace) -> bool {
    let mut one = vec![0; s.ambient()];
    one[0] = 1;
    s.vectors(DEFAULT_CAP).unwrap().any(|v| v == one)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut checked = 0u64;
    for (f, dims) in [(field(2, 3), 1..=2), (field(2, 4), 1..=3)] {
        for d in dims {
            for b in subspaces(&f, d) {
                let expected = !has_one(&b);
                for basis in bases(&b) {
                    let outcome = automatch(&f, &b, &basis).unwrap();
                    ensure(outcome.is_matched() == expected, || {
                        format!(
                            "{f}: B = {b:?}, basis {basis:?}: matched = {}",
                            outcome.is_matched()
                        )
                    })?;
                    if let MatchOutcome::Matched(c) = &outcome {
                        ensure(is_matched(&f, &c.source, &c.target).unwrap(), || {
                            format!("{f}: certificate for {b:?} does not verify")
                        })?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (B, basis) instances"))
}

fn three_way(f: &ExtensionField, basis: &Basis, b: &Subspace) -> Result<bool, String> {
    let dc = dim_criterion(f, basis, b, DEFAULT_SUBSET_CAP).unwrap() == CriterionOutcome::Satisfied;
    let mb = match_basis(f, basis, b).unwrap().is_matched();
    let bf = brute_force_match(f, basis, b, DEFAULT_CAP)
        .unwrap()
        .is_some();
    ensure(dc == mb && mb == bf, || {
        format!(
            "{f}: basis {basis:?}, B = {b:?}: criterion {dc}, constructive {mb}, brute force {bf}"
        )
    })?;
    Ok(mb)
}

fn criterion_2() -> Outcome {
    let (mut total, mut matched) = (0u64, 0u64);
    for f in [field(2, 3), field(2, 4)] {
        for d in 1..=3 {
            let spaces = subspaces(&f, d);
            for a in &spaces {
                let a_bases = bases(a);
                for b in &spaces {
                    for basis in &a_bases {
                        total += 1;
                        matched += three_way(&f, basis, b)? as u64;
                    }
                }
            }
        }
    }
    let exhaustive = total;
    for (f, seed) in [(field(2, 5), 11u64), (field(3, 3), 12)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..1000 {
            let n = 1 + i % 3;
            let a = random_subspace(&mut rng, f.p(), f.k(), n);
            let b = random_subspace(&mut rng, f.p(), f.k(), n);
            let basis = random_basis(&mut rng, &a);
            total += 1;
            matched += three_way(&f, &basis, &b)? as u64;
        }
    }
    Ok(format!(
        "{total} instances ({exhaustive} exhaustive, 2000 random), {matched} matched, 0 disagreements"
    ))
}

/// |{b ∈ B : a_i·b ∈ A for all i ∈ J}| = p^dim V_J, by listing B.
fn v_j_dim_by_listing(f: &ExtensionField, basis: &Basis, b: &Subspace, j: &[usize]) -> usize {
    let a = basis.parent();
    let count = b
        .vectors(DEFAULT_CAP)
        .unwrap()
        .filter(|v| {
            j.iter()
                .all(|&i| a.contains(&f.mul_coords(&basis.vectors()[i - 1], v)))
        })
        .count();
    let mut dim = 0;
    let mut size = 1;
    while size < count {
        size *= f.p() as usize;
        dim += 1;
    }
    assert_eq!(size, count);
    dim
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for f in [field(2, 2), field(2, 3), field(3, 2), field(2, 5)] {
        ensure(matching_property_prediction(&f), || {
            format!("{f} predicted without the property")
        })?;
        let q = f.p() as u64;
        let dims: Vec<usize> = (1..=3.min(f.k()))
            .filter(|&d| {
                let g = gaussian_binomial(f.k(), d, q);
                d <= 2 || g * g * gl_order(d, q) <= DEFAULT_CAP
            })
            .collect();
        let report = run_sweep(
            SweepTask::MatchingProperty,
            &SweepParams::new(Some(f.clone()), dims.clone()),
        )
        .unwrap();
        ensure(report.failure == 0 && report.contradictions == 0, || {
            format!("{f}: unmatched triple {:?}", report.first_failure)
        })?;
        notes.push(format!(
            "{f} n<={} {} triples",
            dims.last().unwrap(),
            report.total
        ));
    }
    for f in [field(2, 4), field(2, 6), field(3, 4)] {
        ensure(!matching_property_prediction(&f), || {
            format!("{f} predicted with the property")
        })?;
        let w = non_matchable_witness(&f)
            .unwrap()
            .expect("composite degree");
        ensure(!has_one(&w.b), || format!("{f}: witness B contains 1"))?;
        let MatchOutcome::Violation(v) = match_basis(&f, &w.basis, &w.b).unwrap() else {
            return Err(format!("{f}: witness basis was matched"));
        };
        let listed = v_j_dim_by_listing(&f, &w.basis, &w.b, &v.j);
        ensure(
            listed == v.vdim && v.vdim > v.bound && v.bound == w.basis.len() - v.j.len(),
            || format!("{f}: certificate {v:?} but dim V_J by listing is {listed}"),
        )?;
        ensure(
            brute_force_match(&f, &w.basis, &w.b, DEFAULT_CAP)
                .unwrap()
                .is_none(),
            || format!("{f}: brute force matched the witness"),
        )?;
        let verdict =
            space_matched(&f, &w.a, &w.b, SpaceMode::Exhaustive { cap: DEFAULT_CAP }).unwrap();
        ensure(matches!(verdict, SpaceVerdict::NotMatched { .. }), || {
            format!("{f}: space verdict {verdict:?}")
        })?;
        notes.push(format!("{f} witness J={:?}", v.j));
    }
    Ok(notes.join("; "))
}

fn criterion_4() -> Outcome {
    let f = field(2, 9);
    ensure(f.n0() == Some(3) && refined_guarantee(&f, 2), || {
        "n0 of F_512 is not 3".into()
    })?;
    let mut params = SweepParams::new(Some(f), vec![2]);
    params.samples = Some(500);
    params.seed = 42;
    let r = run_sweep(SweepTask::Refinement, &params).unwrap();
    ensure(
        r.total == 500 && r.failure == 0 && r.contradictions == 0,
        || {
            format!(
                "{} of {} failed, first {:?}",
                r.failure, r.total, r.first_failure
            )
        },
    )?;
    Ok(format!("{} seeded pairs, 0 failures", r.total))
}

/// AB ∩ A = {0}, by listing products.
fn strong_by_listing(f: &ExtensionField, a: &Subspace, b: &Subspace) -> bool {
    let bs: Vec<Vec<u32>> = b.nonzero_vectors(DEFAULT_CAP).unwrap().collect();
    a.nonzero_vectors(DEFAULT_CAP)
        .unwrap()
        .all(|x| bs.iter().all(|y| !a.contains(&f.mul_coords(&x, y))))
}

fn criterion_5() -> Outcome {
    let f = field(2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut pairs, mut strong) = (0u64, 0u64);
    for d in 1..=2 {
        let spaces = subspaces(&f, d);
        for a in &spaces {
            let a_bases = bases(a);
            for b in &spaces {
                pairs += 1;
                let exists = strong_matching_exists(&f, a, b, DEFAULT_CAP).unwrap();
                ensure(exists == strong_by_listing(&f, a, b), || {
                    format!("A = {a:?}, B = {b:?}: exists = {exists} disagrees with listing")
                })?;
                strong += exists as u64;
                let phis: Vec<Vec<Vec<u32>>> =
                    (0..50).map(|_| random_invertible(&mut rng, 2, d)).collect();
                for phi in &phis {
                    let s = is_strong_matching(&f, phi, a, b, DEFAULT_CAP).unwrap();
                    ensure(s == exists, || {
                        format!(
                            "A = {a:?}, B = {b:?}, phi {phi:?}: strong = {s}, exists = {exists}"
                        )
                    })?;
                }
                if exists {
                    // Any isomorphism: every basis of A is matched to its image.
                    let phi = &phis[0];
                    let image = |x: &Basis| -> Basis {
                        let coords: Vec<Vec<u32>> = x
                            .vectors()
                            .iter()
                            .map(|v| a.echelon_coords(v).unwrap())
                            .collect();
                        let m = linmatch::linalg::mat_mul(a.fp(), &coords, phi, d);
                        Basis::from_echelon_matrix(b, &m).unwrap()
                    };
                    for x in &a_bases {
                        ensure(is_matched(&f, x, &image(x)).unwrap(), || {
                            format!("A = {a:?}, B = {b:?}: basis {x:?} not matched to its image")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{pairs} pairs, {strong} with a strong matching, 50 maps each"
    ))
}

fn criterion_6() -> Outcome {
    let (p, m) = (2u32, 6usize);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut ok, mut violators) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let shared = random_subspace(&mut rng, p, m, (n - 1).max(1));
        let family: Vec<Subspace> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    let d = rng.gen_range(1..=shared.dim());
                    let gens: Vec<Vec<u32>> = (0..d)
                        .map(|_| {
                            let c: Vec<u32> =
                                (0..shared.dim()).map(|_| rng.gen_range(0..p)).collect();
                            linmatch::linalg::combine(shared.fp(), &c, shared.rows(), m)
                        })
                        .collect();
                    Subspace::span(p, m, gens).unwrap()
                } else {
                    let d = rng.gen_range(1..=n);
                    random_subspace(&mut rng, p, m, d)
                }
            })
            .collect();
        let fast = free_transversal(&family).unwrap();
        let slow = brute_force_transversal(&family, DEFAULT_CAP).unwrap();
        ensure(fast.is_transversal() == slow.is_transversal(), || {
            format!("family {family:?}: fast {fast:?}, exhaustive {slow:?}")
        })?;
        match &fast {
            TransversalResult::Transversal(x) => {
                let members = x.iter().zip(&family).all(|(v, e)| e.contains(v));
                let rank = Subspace::span(p, m, x.iter().cloned()).unwrap().dim();
                ensure(members && rank == n, || {
                    format!("family {family:?}: bad transversal {x:?}")
                })?;
                ok += 1;
            }
            TransversalResult::Violator { indices, span_dim } => {
                let span = indices.iter().fold(Subspace::zero(p, m), |acc, &i| {
                    acc.sum(&family[i - 1]).unwrap()
                });
                ensure(
                    span.dim() == *span_dim && span.dim() < indices.len(),
                    || {
                        format!(
                            "family {family:?}: violator {indices:?} spans {}",
                            span.dim()
                        )
                    },
                )?;
                violators += 1;
            }
        }
    }
    Ok(format!(
        "200 families, {ok} transversals, {violators} certified violators"
    ))
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for (f, seed) in [(field(2, 5), 71u64), (field(3, 3), 72)] {
        let mut params = SweepParams::new(Some(f.clone()), vec![1]);
        params.samples = Some(1000);
        params.seed = seed;
        let r = run_sweep(SweepTask::Olson, &params).unwrap();
        ensure(r.total == 1000 && r.failure == 0, || {
            format!("{f}: bound violated on {:?}", r.first_failure)
        })?;
        let holds = r.details.get("kempermanHolds").copied().unwrap_or(0);
        ensure(holds > 0, || {
            format!("{f}: no instance met the product-span hypotheses")
        })?;
        notes.push(format!("{f}: 1000 pairs, hypotheses met on {holds}"));
    }
    Ok(notes.join("; "))
}

/// Every bijection A → B, tried directly.
fn matching_by_permutations(g: &GroupDescriptor, a: &GroupSubset, b: &GroupSubset) -> bool {
    fn go(
        g: &GroupDescriptor,
        a: &GroupSubset,
        b: &GroupSubset,
        i: usize,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if !used[j] && !a.contains(&g.op(&a.elements()[i], &b.elements()[j])) {
                used[j] = true;
                if go(g, a, b, i + 1, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    go(g, a, b, 0, &mut vec![false; b.len()])
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for (n, expect_counterexample) in [
        (2, false),
        (3, false),
        (5, false),
        (7, false),
        (4, true),
        (6, true),
    ] {
        let g = GroupDescriptor::Cyclic(n);
        let r = matching_property_scan(&g, 3, 0, DEFAULT_CAP).unwrap();
        ensure(r.has_counterexample() == expect_counterexample, || {
            format!("{g}: counterexample {:?}", r.first_counterexample)
        })?;
        ensure(r.self_failures == 0 && r.self_checked > 0, || {
            format!("{g}: B-to-B failure {:?}", r.first_self_failure)
        })?;
        if let Some(c) = &r.first_counterexample {
            ensure(!matching_by_permutations(&g, &c.a, &c.b), || {
                format!("{g}: reported counterexample has a matching")
            })?;
        }
        // Spot-check agreement with the permutation oracle on every pair of size 2.
        let all: Vec<i64> = (0..n as i64).collect();
        for x in 0..all.len() {
            for y in x + 1..all.len() {
                let a = GroupSubset::residues(&g, &[all[x], all[y]]).unwrap();
                for u in 1..all.len() {
                    for v in u + 1..all.len() {
                        let b = GroupSubset::residues(&g, &[all[u], all[v]]).unwrap();
                        let fast = find_matching(&a, &b, &g).unwrap().is_matching();
                        ensure(fast == matching_by_permutations(&g, &a, &b), || {
                            format!("{g}: A = {a:?}, B = {b:?} disagree")
                        })?;
                    }
                }
            }
        }
        notes.push(format!("{g} {} pairs", r.pairs_checked));
    }
    Ok(notes.join(", "))
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("automatching", criterion_1),
        ("criterion equivalence", criterion_2),
        ("matching-property dichotomy", criterion_3),
        ("refinement below n0", criterion_4),
        ("strong matchings", criterion_5),
        ("free transversals", criterion_6),
        ("product-span bounds", criterion_7),
        ("group matchings", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
