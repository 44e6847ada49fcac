//! Brute-force oracles that share no code path with the constructive algorithms.

use crate::enumerate::{enumerate_bases, gl_order};
use crate::error::{Error, Result};
use crate::field::ExtensionField;
use crate::fp::Fp;
use crate::linalg;
use crate::subspace::{Basis, Subspace};
use crate::transversal::TransversalResult;

/// S_i = {b ∈ B : a_i·b ∈ A}, collected by enumerating B and spanned.
fn back_division_by_enumeration(
    field: &ExtensionField,
    a_i: &[u32],
    a: &Subspace,
    b: &Subspace,
) -> Result<Subspace> {
    let hits: Vec<Vec<u32>> = b
        .vectors(u128::MAX)?
        .filter(|v| a.contains(&field.mul_coords(a_i, v)))
        .collect();
    Subspace::span(b.p(), b.ambient(), hits)
}

/// First ordered basis of B (in enumeration order) that `source` is matched to.
/// The search visits |GL_n(F_p)| bases and refuses when that exceeds `cap`.
pub fn brute_force_match(
    field: &ExtensionField,
    source: &Basis,
    b: &Subspace,
    cap: u128,
) -> Result<Option<Basis>> {
    let a = source.parent();
    if !field.owns(a) || !field.owns(b) {
        return Err(Error::MismatchedField);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let predicted = gl_order(b.dim(), b.p() as u64).saturating_add(b.cardinality());
    if predicted > cap {
        return Err(Error::GuardExceeded { predicted, cap });
    }
    let cs: Vec<Subspace> = source
        .vectors()
        .iter()
        .map(|v| back_division_by_enumeration(field, v, a, b))
        .collect::<Result<_>>()?;
    for target in enumerate_bases(b, u128::MAX)? {
        let mut ok = true;
        for (i, c) in cs.iter().enumerate() {
            if !c.is_subspace_of(&target.hyperplane_omitting(i + 1)?) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(target));
        }
    }
    Ok(None)
}

/// Exhaustive free-transversal search: every choice of one vector per member, in
/// mixed-radix order. Returns the first independent choice, or the first index set
/// J (by size, then lexicographic) with dim Σ_J E_i < |J|.
pub fn brute_force_transversal(family: &[Subspace], cap: u128) -> Result<TransversalResult> {
    let Some(first) = family.first() else {
        return Ok(TransversalResult::Transversal(Vec::new()));
    };
    let (p, m) = (first.p(), first.ambient());
    if family.iter().any(|e| e.p() != p || e.ambient() != m) {
        return Err(Error::MismatchedField);
    }
    let predicted = family
        .iter()
        .fold(1u128, |acc, e| acc.saturating_mul(e.cardinality()));
    if predicted > cap {
        return Err(Error::GuardExceeded { predicted, cap });
    }
    let fp = Fp::new(p);
    let members: Vec<Vec<Vec<u32>>> = family
        .iter()
        .map(|e| e.vectors(u128::MAX).map(|it| it.collect()))
        .collect::<Result<_>>()?;
    let n = family.len();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let choice: Vec<Vec<u32>> = (0..n).map(|i| members[i][idx[i]].clone()).collect();
        if linalg::rank(fp, &choice, m) == n {
            return Ok(TransversalResult::Transversal(choice));
        }
        for i in (0..n).rev() {
            idx[i] += 1;
            if idx[i] < members[i].len() {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }
    for j in crate::matching::subsets_by_size(n) {
        let span = j
            .iter()
            .try_fold(Subspace::zero(p, m), |acc, &i| acc.sum(&family[i]))?;
        if span.dim() < j.len() {
            return Ok(TransversalResult::Violator {
                indices: j.iter().map(|i| i + 1).collect(),
                span_dim: span.dim(),
            });
        }
    }
    Err(Error::Invalid("no transversal and no Rado violator".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_CAP;
    use crate::matching::{match_basis, non_matchable_witness};
    use crate::transversal::free_transversal;

    #[test]
    fn witness_in_f16_has_no_match() {
        let f16 = ExtensionField::new(2, 4, None).unwrap();
        let w = non_matchable_witness(&f16).unwrap().unwrap();
        assert_eq!(
            brute_force_match(&f16, &w.basis, &w.b, DEFAULT_CAP).unwrap(),
            None
        );
    }

    #[test]
    fn automatch_t_t2_in_f8() {
        let f8 = ExtensionField::new(2, 3, None).unwrap();
        let b = Subspace::span(2, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let src = Basis::echelon(&b);
        let target = brute_force_match(&f8, &src, &b, DEFAULT_CAP)
            .unwrap()
            .unwrap();
        assert!(crate::matching::is_matched(&f8, &src, &target).unwrap());
        assert!(match_basis(&f8, &src, &b).unwrap().is_matched());
    }

    #[test]
    fn one_dimensional_iff_trivial_back_division() {
        let f8 = ExtensionField::new(2, 3, None).unwrap();
        for i in 1..8u64 {
            for j in 1..8u64 {
                let a = Subspace::span(2, 3, vec![f8.element_at(i).into_coeffs()]).unwrap();
                let b = Subspace::span(2, 3, vec![f8.element_at(j).into_coeffs()]).unwrap();
                let src = Basis::echelon(&a);
                let prod = f8.mul_coords(&a.rows()[0], &b.rows()[0]);
                let expected = !a.contains(&prod);
                let got = brute_force_match(&f8, &src, &b, DEFAULT_CAP)
                    .unwrap()
                    .is_some();
                assert_eq!(got, expected, "a = {i}, b = {j}");
            }
        }
    }

    #[test]
    fn transversal_oracle_agrees_on_small_cases() {
        let e = |v: &[&[u32]]| Subspace::span(2, 3, v.iter().map(|r| r.to_vec())).unwrap();
        let fam = vec![e(&[&[1, 0, 0]]), e(&[&[1, 0, 0]]), e(&[&[0, 1, 1]])];
        assert_eq!(
            brute_force_transversal(&fam, DEFAULT_CAP).unwrap(),
            TransversalResult::Violator {
                indices: vec![1, 2],
                span_dim: 1
            }
        );
        assert!(!free_transversal(&fam).unwrap().is_transversal());
        let fam = vec![e(&[&[1, 0, 0], &[0, 1, 0]]), e(&[&[1, 0, 0]])];
        assert!(brute_force_transversal(&fam, DEFAULT_CAP)
            .unwrap()
            .is_transversal());
    }
}
