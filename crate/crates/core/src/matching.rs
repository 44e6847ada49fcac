//! Matched bases and matched subspaces of L = F_{p^k} over K = F_p.
//!
//! A basis a_1..a_n of A is matched to a basis b_1..b_n of B when, for every i,
//! the back-division a_i⁻¹A ∩ B lies in the hyperplane spanned by the b_j with
//! j ≠ i. Such a target basis exists iff dim V_J ≤ n - |J| for every index set J,
//! where V_J is the intersection of the back-divisions a_i⁻¹A ∩ B over i ∈ J.
//!
//! [`match_basis`] builds the target basis constructively: it picks functionals
//! φ_i vanishing on a_i⁻¹A ∩ B that form a free transversal of the annihilators,
//! then takes the primal basis dual to the φ_i.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_bases, gl_order};
use crate::error::{Error, Result};
use crate::field::{ExtensionField, FieldElement};
use crate::fp::pow_sat;
use crate::linalg;
use crate::subspace::{annihilator, back_division, dual_basis_to_primal, Basis, Subspace};
use crate::transversal::{free_transversal, TransversalResult};

/// Largest n for which [`dim_criterion`] scans all 2^n index sets by default.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// A source basis together with a target basis it is matched to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchCertificate {
    pub source: Basis,
    pub target: Basis,
    pub verified: bool,
}

/// Evidence that a source basis cannot be matched: dim V_J = `vdim` > `bound` = n - |J|.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationCertificate {
    /// 1-based, increasing.
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub vdim: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Matched(MatchCertificate),
    Violation(ViolationCertificate),
}

impl MatchOutcome {
    pub fn is_matched(&self) -> bool {
        matches!(self, MatchOutcome::Matched(_))
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum CertificateRepr<'a> {
    Match {
        source: &'a [Vec<u32>],
        target: &'a [Vec<u32>],
    },
    Violation {
        #[serde(rename = "J")]
        j: &'a [usize],
        vdim: usize,
        bound: usize,
    },
}

/// `{"kind":"match","source":[..],"target":[..]}` or
/// `{"kind":"violation","J":[..],"vdim":..,"bound":..}`.
impl Serialize for MatchOutcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MatchOutcome::Matched(c) => CertificateRepr::Match {
                source: c.source.vectors(),
                target: c.target.vectors(),
            },
            MatchOutcome::Violation(v) => CertificateRepr::Violation {
                j: &v.j,
                vdim: v.vdim,
                bound: v.bound,
            },
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriterionOutcome {
    Satisfied,
    Violated(ViolationCertificate),
}

fn check_pair(field: &ExtensionField, a: &Subspace, b: &Subspace) -> Result<usize> {
    if !field.owns(a) || !field.owns(b) {
        return Err(Error::MismatchedField);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.dim())
}

/// The back-divisions a_i⁻¹A ∩ B for each vector of `source`.
pub fn back_divisions(
    field: &ExtensionField,
    source: &Basis,
    b: &Subspace,
) -> Result<Vec<Subspace>> {
    let a = source.parent();
    source
        .vectors()
        .iter()
        .map(|v| back_division(field, &FieldElement::from_coeffs(v.clone()), a, b))
        .collect()
}

/// Whether `source` is matched to `target`: a_i⁻¹A ∩ B ⊂ ⟨b_j : j ≠ i⟩ for every i.
pub fn is_matched(field: &ExtensionField, source: &Basis, target: &Basis) -> Result<bool> {
    check_pair(field, source.parent(), target.parent())?;
    let cs = back_divisions(field, source, target.parent())?;
    inclusions_hold(&cs, target)
}

fn inclusions_hold(cs: &[Subspace], target: &Basis) -> Result<bool> {
    for (i, c) in cs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_subspace_of(&target.hyperplane_omitting(i + 1)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Index sets of {0..n} ordered by size, then lexicographically.
pub(crate) fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |size| Combinations::new(n, size))
}

struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, size: usize) -> Self {
        Combinations {
            n,
            cur: (size <= n).then(|| (0..size).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let c = self.cur.as_mut().unwrap();
        let size = c.len();
        let mut i = size;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if c[i] < self.n - size + i {
                c[i] += 1;
                for j in i + 1..size {
                    c[j] = c[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.cur = None;
        }
        Some(out)
    }
}

/// V_J for 0-based `j`; V_∅ = B.
fn v_j(b: &Subspace, cs: &[Subspace], j: &[usize]) -> Subspace {
    j.iter().fold(b.clone(), |acc, &i| {
        acc.intersect(&cs[i]).expect("same ambient")
    })
}

/// Checks dim V_J ≤ n - |J| for every J, reporting the first violator by size then lex.
pub fn dim_criterion(
    field: &ExtensionField,
    source: &Basis,
    b: &Subspace,
    subset_cap: usize,
) -> Result<CriterionOutcome> {
    let n = check_pair(field, source.parent(), b)?;
    if n > subset_cap {
        return Err(Error::GuardExceeded {
            predicted: pow_sat(2, n as u64),
            cap: pow_sat(2, subset_cap as u64),
        });
    }
    let cs = back_divisions(field, source, b)?;
    for j in subsets_by_size(n) {
        let v = v_j(b, &cs, &j);
        let bound = n - j.len();
        if v.dim() > bound {
            return Ok(CriterionOutcome::Violated(ViolationCertificate {
                j: j.iter().map(|i| i + 1).collect(),
                vdim: v.dim(),
                bound,
            }));
        }
    }
    Ok(CriterionOutcome::Satisfied)
}

/// Matches `source` (a basis of A) to a basis of B, or certifies that no such basis exists.
pub fn match_basis(field: &ExtensionField, source: &Basis, b: &Subspace) -> Result<MatchOutcome> {
    let n = check_pair(field, source.parent(), b)?;
    let cs = back_divisions(field, source, b)?;
    let reference = Basis::echelon(b);

    let family: Vec<Subspace> = cs
        .iter()
        .map(|c| {
            let ann = annihilator(c, &reference)?;
            Subspace::span(b.p(), n, ann.into_iter().map(|f| f.0))
        })
        .collect::<Result<_>>()?;

    match free_transversal(&family)? {
        TransversalResult::Transversal(phis) => {
            let phis: Vec<_> = phis
                .into_iter()
                .map(crate::subspace::DualFunctional)
                .collect();
            let target = dual_basis_to_primal(&phis, &reference)?;
            if !inclusions_hold(&cs, &target)? {
                return Err(Error::Invalid(
                    "constructed target basis failed verification".into(),
                ));
            }
            debug_assert!(remark_holds(field, source, &target));
            Ok(MatchOutcome::Matched(MatchCertificate {
                source: source.clone(),
                target,
                verified: true,
            }))
        }
        TransversalResult::Violator { indices, span_dim } => {
            // Σ_{i∈J} C_i^⊥ = (V_J)^⊥, so dim V_J = n - span_dim > n - |J|.
            let j0: Vec<usize> = indices.iter().map(|i| i - 1).collect();
            let v = v_j(b, &cs, &j0);
            debug_assert_eq!(v.dim(), n - span_dim);
            let bound = n - indices.len();
            assert!(
                v.dim() > bound,
                "transversal violator does not violate the criterion"
            );
            Ok(MatchOutcome::Violation(ViolationCertificate {
                j: indices,
                vdim: v.dim(),
                bound,
            }))
        }
    }
}

/// a_i·b_i ∉ A for every i.
pub fn remark_holds(field: &ExtensionField, source: &Basis, target: &Basis) -> bool {
    source
        .vectors()
        .iter()
        .zip(target.vectors())
        .all(|(a, b)| !source.parent().contains(&field.mul_coords(a, b)))
}

/// B matched to itself through the given basis of B.
pub fn automatch(field: &ExtensionField, b: &Subspace, source: &Basis) -> Result<MatchOutcome> {
    if source.parent() != b {
        return Err(Error::BasisMismatch);
    }
    match_basis(field, source, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceMode {
    /// Every ordered basis of A, refusing when |GL_n(F_p)| exceeds `cap`.
    Exhaustive { cap: u128 },
    /// `count` random bases of A drawn from a ChaCha8 stream seeded with `seed`.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceVerdict {
    Matched,
    NotMatched {
        witness: Basis,
        violation: ViolationCertificate,
    },
    /// Every sampled basis matched; this never proves the universal claim.
    Inconclusive {
        samples: usize,
    },
}

/// Uniformly random invertible matrix by rejection.
pub fn random_invertible<R: Rng>(rng: &mut R, p: u32, n: usize) -> Vec<Vec<u32>> {
    let fp = crate::fp::Fp::new(p);
    loop {
        let m: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if linalg::rank(fp, &m, n) == n {
            return m;
        }
    }
}

/// A uniformly random ordered basis of `space`.
pub fn random_basis<R: Rng>(rng: &mut R, space: &Subspace) -> Basis {
    let m = random_invertible(rng, space.p(), space.dim());
    Basis::from_echelon_matrix(space, &m).expect("invertible")
}

/// Whether A is matched to B, i.e. every basis of A can be matched to some basis of B.
pub fn space_matched(
    field: &ExtensionField,
    a: &Subspace,
    b: &Subspace,
    mode: SpaceMode,
) -> Result<SpaceVerdict> {
    check_pair(field, a, b)?;
    match mode {
        SpaceMode::Exhaustive { cap } => {
            let predicted = gl_order(a.dim(), a.p() as u64);
            if predicted > cap {
                return Err(Error::GuardExceeded { predicted, cap });
            }
            for basis in enumerate_bases(a, u128::MAX)? {
                if let MatchOutcome::Violation(v) = match_basis(field, &basis, b)? {
                    return Ok(SpaceVerdict::NotMatched {
                        witness: basis,
                        violation: v,
                    });
                }
            }
            Ok(SpaceVerdict::Matched)
        }
        SpaceMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let basis = random_basis(&mut rng, a);
                if let MatchOutcome::Violation(v) = match_basis(field, &basis, b)? {
                    return Ok(SpaceVerdict::NotMatched {
                        witness: basis,
                        violation: v,
                    });
                }
            }
            Ok(SpaceVerdict::Inconclusive { samples: count })
        }
    }
}

/// True iff L has no subfield strictly between K and L (k = 1 or k prime).
pub fn matching_property_prediction(field: &ExtensionField) -> bool {
    field.has_prime_degree_or_trivial()
}

/// An instance (A, B, basis of A) with 1 ∉ B whose basis cannot be matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonMatchableWitness {
    /// Generator of the intermediate subfield K(a) = A.
    pub generator: FieldElement,
    pub a: Subspace,
    pub b: Subspace,
    /// 1, a, ..., a^{n-1}.
    pub basis: Basis,
}

/// For composite k: A = K(a) for a generating the smallest proper subfield, x the first
/// power-basis monomial outside A, B = ⟨a, ..., a^{n-1}, x⟩. `None` when k is 1 or prime.
pub fn non_matchable_witness(field: &ExtensionField) -> Result<Option<NonMatchableWitness>> {
    if matching_property_prediction(field) {
        return Ok(None);
    }
    let n = field.n0().expect("k > 1");
    let sub = field.subfield(n)?;
    // The generator with the smallest little-endian index.
    let mut generator = None;
    let mut best = u64::MAX;
    for e in sub.space.elements(u128::MAX)? {
        if field.element_degree(&e)? == n {
            let idx = field.index_of(&e);
            if idx < best {
                best = idx;
                generator = Some(e);
            }
        }
    }
    let a_gen = generator.expect("a subfield of degree n has generators");
    let powers: Vec<FieldElement> = (0..n)
        .map(|i| field.pow(&a_gen, i as u64))
        .collect::<Result<_>>()?;
    let a = Subspace::span_elements(field, &powers)?;
    debug_assert_eq!(a, sub.space);
    let x = (0..field.k())
        .map(|i| field.monomial(i))
        .find(|m| !a.contains(m.coeffs()))
        .expect("A is a proper subspace");
    let mut b_gens: Vec<FieldElement> = powers[1..].to_vec();
    b_gens.push(x);
    let b = Subspace::span_elements(field, &b_gens)?;
    let basis = Basis::new(&a, powers.iter().map(|e| e.coeffs().to_vec()).collect())?;
    Ok(Some(NonMatchableWitness {
        generator: a_gen,
        a,
        b,
        basis,
    }))
}

/// Whether n < n0(K, L), which guarantees every n-dimensional pair with 1 ∉ B is matched.
pub fn refined_guarantee(field: &ExtensionField, n: usize) -> bool {
    match field.n0() {
        Some(n0) => n < n0,
        None => true,
    }
}
