//! Theorem sweeps over exhaustive or seeded random corpora.
//!
//! Each sweep builds its instance list up front (random instances are drawn from a
//! single seeded stream), evaluates instances in parallel, and folds the per-instance
//! tallies in instance order, so reports are identical for identical parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::additive::{kemperman_check, olson_consequence_check, KempermanOutcome};
use crate::enumerate::{enumerate_bases, enumerate_subspaces, gaussian_binomial, gl_order};
use crate::error::{Error, Result};
use crate::field::{ExtensionField, FieldDescriptor};
use crate::group::{matching_property_scan, GroupDescriptor};
use crate::matching::{
    automatch, dim_criterion, is_matched, match_basis, matching_property_prediction,
    non_matchable_witness, random_basis, random_invertible, refined_guarantee, CriterionOutcome,
    MatchOutcome, DEFAULT_SUBSET_CAP,
};
use crate::oracle::{brute_force_match, brute_force_transversal};
use crate::strong::{is_strong_matching, strong_matching_exists};
use crate::subspace::{Basis, Subspace};
use crate::transversal::{free_transversal, TransversalResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepTask {
    Automatch,
    MatchingProperty,
    StrongMatching,
    Refinement,
    Olson,
    Groups,
    Criterion,
    Transversal,
}

impl SweepTask {
    pub const ALL: [SweepTask; 8] = [
        SweepTask::Automatch,
        SweepTask::MatchingProperty,
        SweepTask::StrongMatching,
        SweepTask::Refinement,
        SweepTask::Olson,
        SweepTask::Groups,
        SweepTask::Criterion,
        SweepTask::Transversal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepTask::Automatch => "automatch",
            SweepTask::MatchingProperty => "matchingProperty",
            SweepTask::StrongMatching => "strongMatching",
            SweepTask::Refinement => "refinement",
            SweepTask::Olson => "olson",
            SweepTask::Groups => "groups",
            SweepTask::Criterion => "criterion",
            SweepTask::Transversal => "transversal",
        }
    }
}

impl fmt::Display for SweepTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepTask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepTask::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown sweep task {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct SweepParams {
    /// Required by every task except `groups`. For `transversal` only p and k are
    /// used, as the vector space F_p^k.
    pub field: Option<ExtensionField>,
    pub dims: Vec<usize>,
    /// Random corpus size; `None` selects the exhaustive corpus where one exists.
    pub samples: Option<usize>,
    pub seed: u64,
    pub cap: u128,
    pub groups: Vec<GroupDescriptor>,
    pub max_size: usize,
    pub radius: i64,
}

impl SweepParams {
    pub fn new(field: Option<ExtensionField>, dims: Vec<usize>) -> Self {
        SweepParams {
            field,
            dims,
            samples: None,
            seed: 0,
            cap: crate::enumerate::DEFAULT_CAP,
            groups: Vec::new(),
            max_size: 3,
            radius: 2,
        }
    }

    fn field(&self) -> Result<&ExtensionField> {
        self.field
            .as_ref()
            .ok_or_else(|| Error::Invalid("this sweep needs a field".into()))
    }
}

/// Counts and first examples for one sweep. `success`/`failure` count per-instance
/// outcomes; `contradictions` counts instances that contradict a theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub task: String,
    pub field: Option<FieldDescriptor>,
    pub dims: Vec<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub total: u64,
    pub success: u64,
    pub failure: u64,
    pub contradictions: u64,
    pub first_failure: Option<Value>,
    pub first_counterexample: Option<Value>,
    pub details: BTreeMap<String, u64>,
    #[serde(skip)]
    pub duration: Duration,
}

impl SweepReport {
    pub fn contradicted(&self) -> bool {
        self.contradictions > 0
    }

    /// Aligned key/value lines for a terminal.
    pub fn summary(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("task".into(), self.task.clone()),
            ("seed".into(), self.seed.to_string()),
            ("total".into(), self.total.to_string()),
            ("success".into(), self.success.to_string()),
            ("failure".into(), self.failure.to_string()),
            ("contradictions".into(), self.contradictions.to_string()),
        ];
        if let Some(f) = &self.field {
            rows.insert(1, ("field".into(), format!("p={} k={}", f.p, f.k)));
        }
        for (k, v) in &self.details {
            rows.push((k.clone(), v.to_string()));
        }
        rows.push((
            "duration".into(),
            format!("{:.3}s", self.duration.as_secs_f64()),
        ));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

#[derive(Debug, Default)]
struct Tally {
    total: u64,
    success: u64,
    failure: u64,
    contradictions: u64,
    first_failure: Option<Value>,
    first_counterexample: Option<Value>,
    details: BTreeMap<String, u64>,
}

impl Tally {
    fn record(&mut self, ok: bool, contradiction: bool, describe: impl Fn() -> Value) {
        self.total += 1;
        if ok {
            self.success += 1;
        } else {
            self.failure += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
        if contradiction {
            self.contradictions += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }

    fn bump(&mut self, key: &str, by: u64) {
        *self.details.entry(key.to_string()).or_insert(0) += by;
    }

    /// Appends `later`; first examples are taken from the earlier tally when present.
    fn merge(mut self, later: Tally) -> Tally {
        self.total += later.total;
        self.success += later.success;
        self.failure += later.failure;
        self.contradictions += later.contradictions;
        self.first_failure = self.first_failure.or(later.first_failure);
        self.first_counterexample = self.first_counterexample.or(later.first_counterexample);
        for (k, v) in later.details {
            *self.details.entry(k).or_insert(0) += v;
        }
        self
    }
}

fn fold(parts: Vec<Result<Tally>>) -> Result<Tally> {
    parts
        .into_iter()
        .try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

fn guard(predicted: u128, cap: u128) -> Result<()> {
    if predicted > cap {
        Err(Error::GuardExceeded { predicted, cap })
    } else {
        Ok(())
    }
}

/// Uniformly random d-dimensional subspace of F_p^ambient, by rejection on rank.
pub fn random_subspace<R: Rng>(rng: &mut R, p: u32, ambient: usize, d: usize) -> Subspace {
    assert!(d <= ambient);
    loop {
        let gens: Vec<Vec<u32>> = (0..d)
            .map(|_| (0..ambient).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        let s = Subspace::span(p, ambient, gens).expect("coordinates in range");
        if s.dim() == d {
            return s;
        }
    }
}

/// Random d-dimensional subspace containing 1 (d ≥ 1).
pub fn random_subspace_with_one<R: Rng>(rng: &mut R, p: u32, ambient: usize, d: usize) -> Subspace {
    assert!(d >= 1 && d <= ambient);
    let mut one = vec![0; ambient];
    one[0] = 1;
    loop {
        let mut gens: Vec<Vec<u32>> = (1..d)
            .map(|_| (0..ambient).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        gens.push(one.clone());
        let s = Subspace::span(p, ambient, gens).expect("coordinates in range");
        if s.dim() == d {
            return s;
        }
    }
}

fn random_subspace_without_one<R: Rng>(rng: &mut R, p: u32, ambient: usize, d: usize) -> Subspace {
    loop {
        let s = random_subspace(rng, p, ambient, d);
        if !s.contains_one() {
            return s;
        }
    }
}

fn rows(s: &Subspace) -> Value {
    json!(s.rows())
}

fn instance_json(a: &Subspace, b: &Subspace, basis: &Basis) -> Value {
    json!({"A": rows(a), "B": rows(b), "basis": basis.vectors()})
}

fn all_subspaces(field: &ExtensionField, d: usize, cap: u128) -> Result<Vec<Subspace>> {
    Ok(enumerate_subspaces(field.p(), field.k(), d, cap)?.collect())
}

fn check_dims(field: &ExtensionField, dims: &[usize]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::Invalid("no dimensions given".into()));
    }
    match dims.iter().find(|&&d| d == 0 || d > field.k()) {
        Some(&d) => Err(Error::Invalid(format!(
            "dimension {d} outside 1..={}",
            field.k()
        ))),
        None => Ok(()),
    }
}

/// Per-instance seed, independent of scheduling.
fn sub_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn run_sweep(task: SweepTask, params: &SweepParams) -> Result<SweepReport> {
    let start = Instant::now();
    let tally = match task {
        SweepTask::Automatch => sweep_automatch(params)?,
        SweepTask::MatchingProperty => sweep_matching_property(params)?,
        SweepTask::StrongMatching => sweep_strong(params)?,
        SweepTask::Refinement => sweep_refinement(params)?,
        SweepTask::Olson => sweep_olson(params)?,
        SweepTask::Groups => sweep_groups(params)?,
        SweepTask::Criterion => sweep_criterion(params)?,
        SweepTask::Transversal => sweep_transversal(params)?,
    };
    Ok(SweepReport {
        task: task.name().to_string(),
        field: params.field.as_ref().map(|f| f.descriptor()),
        dims: params.dims.clone(),
        samples: params.samples,
        seed: params.seed,
        total: tally.total,
        success: tally.success,
        failure: tally.failure,
        contradictions: tally.contradictions,
        first_failure: tally.first_failure,
        first_counterexample: tally.first_counterexample,
        details: tally.details,
        duration: start.elapsed(),
    })
}

/// Every basis of every B of the given dimensions: automatch succeeds iff 1 ∉ B.
fn sweep_automatch(params: &SweepParams) -> Result<Tally> {
    let field = params.field()?;
    check_dims(field, &params.dims)?;
    let q = field.p() as u64;
    let predicted = params.dims.iter().fold(0u128, |acc, &d| {
        acc.saturating_add(gaussian_binomial(field.k(), d, q).saturating_mul(gl_order(d, q)))
    });
    guard(predicted, params.cap)?;
    let mut spaces = Vec::new();
    for &d in &params.dims {
        spaces.extend(all_subspaces(field, d, params.cap)?);
    }
    let parts: Vec<Result<Tally>> =
        spaces
            .par_iter()
            .map(|b| {
                let mut t = Tally::default();
                let expected = !b.contains_one();
                for basis in enumerate_bases(b, u128::MAX)? {
                    let matched = automatch(field, b, &basis)?.is_matched();
                    t.record(matched, matched != expected, || {
                    json!({"B": rows(b), "basis": basis.vectors(), "containsOne": !expected})
                });
                }
                Ok(t)
            })
            .collect();
    fold(parts)
}

fn pairs_without_one_in_b(
    field: &ExtensionField,
    dims: &[usize],
    cap: u128,
) -> Result<Vec<(Subspace, Subspace)>> {
    let mut pairs = Vec::new();
    for &d in dims {
        let spaces = all_subspaces(field, d, cap)?;
        for a in &spaces {
            for b in spaces.iter().filter(|b| !b.contains_one()) {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(pairs)
}

fn pair_budget(field: &ExtensionField, dims: &[usize]) -> u128 {
    let q = field.p() as u64;
    dims.iter().fold(0u128, |acc, &d| {
        let g = gaussian_binomial(field.k(), d, q);
        acc.saturating_add(g.saturating_mul(g).saturating_mul(gl_order(d, q)))
    })
}

/// Every (A, B, basis of A) with 1 ∉ B. A failure contradicts the matching property
/// only when the field is predicted to have it; for other fields the witness
/// construction is verified as well.
fn sweep_matching_property(params: &SweepParams) -> Result<Tally> {
    let field = params.field()?;
    check_dims(field, &params.dims)?;
    guard(pair_budget(field, &params.dims), params.cap)?;
    let predicted = matching_property_prediction(field);
    let pairs = pairs_without_one_in_b(field, &params.dims, params.cap)?;
    let parts: Vec<Result<Tally>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let mut t = Tally::default();
            for basis in enumerate_bases(a, u128::MAX)? {
                let matched = match_basis(field, &basis, b)?.is_matched();
                t.record(matched, predicted && !matched, || {
                    instance_json(a, b, &basis)
                });
            }
            Ok(t)
        })
        .collect();
    let mut tally = fold(parts)?;
    if let Some(w) = non_matchable_witness(field)? {
        let violation = matches!(
            match_basis(field, &w.basis, &w.b)?,
            MatchOutcome::Violation(_)
        );
        let oracle_none = brute_force_match(field, &w.basis, &w.b, params.cap)?.is_none();
        let verified = violation && oracle_none && !w.b.contains_one();
        tally.bump("witnessVerified", verified as u64);
        if !verified {
            tally.contradictions += 1;
            tally
                .first_counterexample
                .get_or_insert_with(|| json!({"witness": instance_json(&w.a, &w.b, &w.basis)}));
        }
    }
    Ok(tally)
}

/// All pairs (A, B): a strong matching exists iff every sampled isomorphism is one,
/// and when it exists a single isomorphism carries a basis to a matched basis.
fn sweep_strong(params: &SweepParams) -> Result<Tally> {
    let field = params.field()?;
    check_dims(field, &params.dims)?;
    let per_pair = params.samples.unwrap_or(50);
    let q = field.p() as u64;
    let pair_count = params.dims.iter().fold(0u128, |acc, &d| {
        let g = gaussian_binomial(field.k(), d, q);
        acc.saturating_add(g.saturating_mul(g))
    });
    guard(pair_count.saturating_mul(per_pair as u128 + 1), params.cap)?;
    let mut pairs = Vec::new();
    for &d in &params.dims {
        let spaces = all_subspaces(field, d, params.cap)?;
        for a in &spaces {
            for b in &spaces {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let parts: Vec<Result<Tally>> = pairs
        .par_iter()
        .enumerate()
        .map(|(idx, (a, b))| {
            let mut t = Tally::default();
            let exists = strong_matching_exists(field, a, b, params.cap)?;
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(params.seed, idx));
            let mut agree = true;
            let mut first_phi = None;
            for _ in 0..per_pair {
                let phi = random_invertible(&mut rng, field.p(), a.dim());
                if is_strong_matching(field, &phi, a, b, params.cap)? != exists {
                    agree = false;
                }
                first_phi.get_or_insert(phi);
            }
            let mut transported = true;
            if exists {
                if let Some(phi) = &first_phi {
                    let src = Basis::echelon(a);
                    let target = Basis::from_echelon_matrix(b, phi)?;
                    transported = is_matched(field, &src, &target)?;
                }
            }
            t.record(
                exists,
                !agree || !transported,
                || json!({"A": rows(a), "B": rows(b), "exists": exists, "phi": first_phi}),
            );
            Ok(t)
        })
        .collect();
    fold(parts)
}

/// Random pairs of dimension n with 1 ∉ B and random source bases; a failure
/// contradicts the refined bound when n < n0.
fn sweep_refinement(params: &SweepParams) -> Result<Tally> {
    let field = params.field()?;
    check_dims(field, &params.dims)?;
    let samples = params.samples.unwrap_or(500);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (p, k) = (field.p(), field.k());
    let instances: Vec<(Subspace, Subspace, Basis)> = (0..samples)
        .map(|i| {
            let n = params.dims[i % params.dims.len()];
            let a = random_subspace(&mut rng, p, k, n);
            let b = random_subspace_without_one(&mut rng, p, k, n);
            let basis = random_basis(&mut rng, &a);
            (a, b, basis)
        })
        .collect();
    let parts: Vec<Result<Tally>> = instances
        .par_iter()
        .map(|(a, b, basis)| {
            let mut t = Tally::default();
            let matched = match_basis(field, basis, b)?.is_matched();
            let guaranteed = refined_guarantee(field, a.dim());
            t.record(matched, guaranteed && !matched, || {
                instance_json(a, b, basis)
            });
            Ok(t)
        })
        .collect();
    fold(parts)
}

/// Random pairs of random dimensions; every other instance forces 1 into A and B.
fn sweep_olson(params: &SweepParams) -> Result<Tally> {
    let field = params.field()?;
    if !field.has_prime_degree_or_trivial() {
        return Err(Error::CompositeDegree(field.k()));
    }
    let samples = params.samples.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (p, k) = (field.p(), field.k());
    let instances: Vec<(Subspace, Subspace)> = (0..samples)
        .map(|i| {
            let da = rng.gen_range(1..=k);
            let db = rng.gen_range(1..=k);
            if i % 2 == 0 {
                (
                    random_subspace_with_one(&mut rng, p, k, da),
                    random_subspace_with_one(&mut rng, p, k, db),
                )
            } else {
                (
                    random_subspace(&mut rng, p, k, da),
                    random_subspace(&mut rng, p, k, db),
                )
            }
        })
        .collect();
    let parts: Vec<Result<Tally>> = instances
        .par_iter()
        .map(|(a, b)| {
            let mut t = Tally::default();
            let ok = olson_consequence_check(field, a, b)?;
            t.record(ok, !ok, || json!({"A": rows(a), "B": rows(b)}));
            match kemperman_check(field, a, b, params.cap)? {
                KempermanOutcome::Holds { .. } => t.bump("kempermanHolds", 1),
                KempermanOutcome::HypothesesNotMet => t.bump("kempermanHypothesesNotMet", 1),
            }
            Ok(t)
        })
        .collect();
    fold(parts)
}

/// Scans each group. Counterexamples contradict the theory only in groups with the
/// matching property; B-to-B failures contradict it everywhere.
fn sweep_groups(params: &SweepParams) -> Result<Tally> {
    if params.groups.is_empty() {
        return Err(Error::Invalid("no groups given".into()));
    }
    let reports: Vec<Result<_>> = params
        .groups
        .par_iter()
        .map(|g| matching_property_scan(g, params.max_size, params.radius, params.cap))
        .collect();
    let mut t = Tally::default();
    for (g, r) in params.groups.iter().zip(reports) {
        let r = r?;
        let unmatched = r.pairs_checked - r.pairs_matched;
        t.total += r.pairs_checked + r.self_checked;
        t.success += r.pairs_matched + (r.self_checked - r.self_failures);
        t.failure += unmatched + r.self_failures;
        let name = g.to_string();
        t.bump(&format!("{name}.pairs"), r.pairs_checked);
        t.bump(&format!("{name}.unmatched"), unmatched);
        t.bump(&format!("{name}.selfChecked"), r.self_checked);
        t.bump(&format!("{name}.selfFailures"), r.self_failures);
        if t.first_failure.is_none() {
            t.first_failure = r
                .first_counterexample
                .as_ref()
                .map(|c| serde_json::to_value(c).expect("serializable"));
        }
        let bad_pairs = if g.has_matching_property() {
            unmatched
        } else {
            0
        };
        t.contradictions += bad_pairs + r.self_failures;
        if t.first_counterexample.is_none() {
            let c = if bad_pairs > 0 {
                r.first_counterexample.as_ref()
            } else {
                r.first_self_failure.as_ref()
            };
            t.first_counterexample = c.map(|c| serde_json::to_value(c).expect("serializable"));
        }
    }
    Ok(t)
}

/// dim_criterion, match_basis and brute_force_match must agree on every instance.
/// Exhaustive over all (A, B, basis of A) without `samples`, otherwise random.
fn sweep_criterion(params: &SweepParams) -> Result<Tally> {
    let field = params.field()?;
    check_dims(field, &params.dims)?;
    let (p, k) = (field.p(), field.k());
    let instances: Vec<(Subspace, Subspace, Option<Basis>)> = match params.samples {
        None => {
            guard(pair_budget(field, &params.dims), params.cap)?;
            let mut out = Vec::new();
            for &d in &params.dims {
                let spaces = all_subspaces(field, d, params.cap)?;
                for a in &spaces {
                    for b in &spaces {
                        out.push((a.clone(), b.clone(), None));
                    }
                }
            }
            out
        }
        Some(samples) => {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            (0..samples)
                .map(|i| {
                    let n = params.dims[i % params.dims.len()];
                    let a = random_subspace(&mut rng, p, k, n);
                    let b = random_subspace(&mut rng, p, k, n);
                    let basis = random_basis(&mut rng, &a);
                    (a, b, Some(basis))
                })
                .collect()
        }
    };
    let parts: Vec<Result<Tally>> = instances
        .par_iter()
        .map(|(a, b, basis)| {
            let mut t = Tally::default();
            let bases: Vec<Basis> = match basis {
                Some(x) => vec![x.clone()],
                None => enumerate_bases(a, u128::MAX)?.collect(),
            };
            for basis in &bases {
                let dc = dim_criterion(field, basis, b, DEFAULT_SUBSET_CAP)?
                    == CriterionOutcome::Satisfied;
                let mb = match_basis(field, basis, b)?.is_matched();
                let bf = brute_force_match(field, basis, b, params.cap)?.is_some();
                t.record(mb, dc != mb || mb != bf, || {
                    let mut v = instance_json(a, b, basis);
                    v["criterion"] = json!(dc);
                    v["constructive"] = json!(mb);
                    v["bruteForce"] = json!(bf);
                    v
                });
            }
            Ok(t)
        })
        .collect();
    fold(parts)
}

/// Random families in F_p^k, with a third of the members squeezed into a shared small
/// subspace so that violators occur. The fast result is checked against the exhaustive
/// search and against its own certificate.
fn sweep_transversal(params: &SweepParams) -> Result<Tally> {
    let field = params.field()?;
    let (p, m) = (field.p(), field.k());
    let samples = params.samples.unwrap_or(200);
    if params.dims.is_empty() || params.dims.iter().any(|&n| n == 0 || n > m) {
        return Err(Error::Invalid(format!("family sizes must lie in 1..={m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let families: Vec<Vec<Subspace>> = (0..samples)
        .map(|_| {
            let n = params.dims[rng.gen_range(0..params.dims.len())];
            let shared = random_subspace(&mut rng, p, m, n.saturating_sub(1).max(1));
            (0..n)
                .map(|_| {
                    if rng.gen_range(0..3) == 0 {
                        let d = rng.gen_range(0..=shared.dim());
                        let gens: Vec<Vec<u32>> = (0..d)
                            .map(|_| {
                                let c: Vec<u32> =
                                    (0..shared.dim()).map(|_| rng.gen_range(0..p)).collect();
                                crate::linalg::combine(shared.fp(), &c, shared.rows(), m)
                            })
                            .collect();
                        Subspace::span(p, m, gens).expect("in range")
                    } else {
                        let d = rng.gen_range(1..=n);
                        random_subspace(&mut rng, p, m, d)
                    }
                })
                .collect()
        })
        .collect();
    let parts: Vec<Result<Tally>> = families
        .par_iter()
        .map(|fam| {
            let mut t = Tally::default();
            let fast = free_transversal(fam)?;
            let slow = brute_force_transversal(fam, params.cap)?;
            let certified = match &fast {
                TransversalResult::Transversal(x) => {
                    x.iter().zip(fam).all(|(v, e)| e.contains(v))
                        && crate::linalg::rank(fam[0].fp(), x, m) == fam.len()
                }
                TransversalResult::Violator { indices, span_dim } => {
                    let span = indices
                        .iter()
                        .try_fold(Subspace::zero(p, m), |acc, &i| acc.sum(&fam[i - 1]))?;
                    span.dim() == *span_dim && *span_dim < indices.len()
                }
            };
            let ok = fast.is_transversal();
            t.record(
                ok,
                !certified || ok != slow.is_transversal(),
                || json!({"family": fam.iter().map(rows).collect::<Vec<_>>()}),
            );
            Ok(t)
        })
        .collect();
    fold(parts)
}
