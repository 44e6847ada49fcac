//! Product-span dimension bounds used as empirical oracles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::ExtensionField;
use crate::fp::{digits, pow_sat, Fp};
use crate::subspace::{product_span, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KempermanOutcome {
    /// Hypotheses met for the recorded complements and dim⟨AB⟩ ≥ dim A + dim B - 1 confirmed.
    Holds {
        a_bar: Vec<Vec<u32>>,
        b_bar: Vec<Vec<u32>>,
        product_dim: usize,
    },
    HypothesesNotMet,
}

/// Complements of K = span{1} inside a subspace containing 1: span{r_i + c_i}
/// over the non-constant echelon rows r_i, for every c ∈ F_p^(d-1). The
/// canonical complement (c = 0) comes first.
fn complements_of_one(s: &Subspace, limit: u64) -> Vec<Subspace> {
    let fp: Fp = s.fp();
    let rest = &s.rows()[1..];
    (0..limit)
        .map(|idx| {
            let c = digits(idx, s.p(), rest.len());
            let rows = rest
                .iter()
                .zip(&c)
                .map(|(r, &ci)| {
                    let mut r = r.clone();
                    r[0] = fp.add(r[0], ci);
                    r
                })
                .collect();
            Subspace::from_rows_unchecked(s.p(), s.ambient(), rows)
        })
        .collect()
}

/// Searches complements Ā, B̄ of K in A, B with K ∩ (Ā + B̄ + ⟨ĀB̄⟩) = {0}. When found,
/// dim⟨AB⟩ ≥ dim A + dim B - 1 must hold; a failure there is a broken invariant and panics.
///
/// All p^(dim A - 1) · p^(dim B - 1) complement pairs are tried when that count is at
/// most `cap`; otherwise only the canonical pair.
pub fn kemperman_check(
    field: &ExtensionField,
    a: &Subspace,
    b: &Subspace,
    cap: u128,
) -> Result<KempermanOutcome> {
    if !field.owns(a) || !field.owns(b) {
        return Err(Error::MismatchedField);
    }
    if !a.contains_one() || !b.contains_one() {
        return Ok(KempermanOutcome::HypothesesNotMet);
    }
    let pairs = pow_sat(a.p() as u64, (a.dim() + b.dim() - 2) as u64);
    let (la, lb) = if pairs <= cap {
        (
            pow_sat(a.p() as u64, (a.dim() - 1) as u64) as u64,
            pow_sat(b.p() as u64, (b.dim() - 1) as u64) as u64,
        )
    } else {
        (1, 1)
    };
    let a_bars = complements_of_one(a, la);
    let b_bars = complements_of_one(b, lb);
    for a_bar in &a_bars {
        for b_bar in &b_bars {
            let x = a_bar.sum(b_bar)?.sum(&product_span(field, a_bar, b_bar)?)?;
            if x.contains_one() {
                continue;
            }
            let ab = product_span(field, a, b)?;
            assert!(
                ab.dim() + 1 >= a.dim() + b.dim(),
                "product-span bound violated under met hypotheses: A = {a:?}, B = {b:?}"
            );
            return Ok(KempermanOutcome::Holds {
                a_bar: a_bar.rows().to_vec(),
                b_bar: b_bar.rows().to_vec(),
                product_dim: ab.dim(),
            });
        }
    }
    Ok(KempermanOutcome::HypothesesNotMet)
}

/// In a prime-degree extension the only intermediate fields are K and L, so
/// dim⟨AB⟩ ≥ min(k, dim A + dim B - 1). Returns whether that bound holds.
pub fn olson_consequence_check(field: &ExtensionField, a: &Subspace, b: &Subspace) -> Result<bool> {
    if !field.has_prime_degree_or_trivial() {
        return Err(Error::CompositeDegree(field.k()));
    }
    if !field.owns(a) || !field.owns(b) {
        return Err(Error::MismatchedField);
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::Invalid("A and B must be nonzero".into()));
    }
    let ab = product_span(field, a, b)?;
    Ok(ab.dim() >= field.k().min(a.dim() + b.dim() - 1))
}
