//! Strong matchings: isomorphisms A → B under which every basis of A is matched
//! to its image.

use crate::error::{Error, Result};
use crate::field::{ExtensionField, FieldElement};
use crate::fp::pow_sat;
use crate::linalg;
use crate::subspace::{back_division, Subspace};

fn check(field: &ExtensionField, a: &Subspace, b: &Subspace) -> Result<usize> {
    if !field.owns(a) || !field.owns(b) {
        return Err(Error::MismatchedField);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if a.is_zero() {
        return Err(Error::Invalid(
            "strong matchings need nonzero subspaces".into(),
        ));
    }
    Ok(a.dim())
}

/// Whether AB ∩ A = {0}, i.e. a⁻¹A ∩ B = {0} for every nonzero a ∈ A.
/// Enumerates the p^n - 1 nonzero elements of A, guarded by `cap`.
pub fn strong_matching_exists(
    field: &ExtensionField,
    a: &Subspace,
    b: &Subspace,
    cap: u128,
) -> Result<bool> {
    check(field, a, b)?;
    for v in a.nonzero_vectors(cap)? {
        if !back_division(field, &FieldElement::from_coeffs(v), a, b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the isomorphism `phi` is a strong matching. Row i of `phi` holds the
/// echelon coordinates in B of the image of the i-th echelon row of A.
///
/// Checked directly: for every nonzero a ∈ A and every complement H of ⟨a⟩ in A,
/// a⁻¹A ∩ B must lie in phi(H). The complements are the kernels of the forms f on
/// A with f(a) ≠ 0, so the scan visits p^n · p^n (a, f) pairs, guarded by `cap`.
pub fn is_strong_matching(
    field: &ExtensionField,
    phi: &[Vec<u32>],
    a: &Subspace,
    b: &Subspace,
    cap: u128,
) -> Result<bool> {
    let n = check(field, a, b)?;
    if phi.len() != n || phi.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            left: phi.len(),
            right: n,
        });
    }
    let fp = a.fp();
    if linalg::inverse(fp, phi).is_none() {
        return Err(Error::Singular);
    }
    let predicted = pow_sat(a.p() as u64, 2 * n as u64);
    if predicted > cap {
        return Err(Error::GuardExceeded { predicted, cap });
    }
    // image of a vector with A-echelon coordinates c
    let image = |c: &[u32]| -> Vec<u32> {
        let in_b = linalg::mat_mul(fp, &[c.to_vec()], phi, n).remove(0);
        linalg::combine(fp, &in_b, b.rows(), b.ambient())
    };
    let coords_space = Subspace::full(a.p(), n);
    let forms: Vec<Vec<u32>> = coords_space.nonzero_vectors(u128::MAX)?.collect();

    for c in coords_space.nonzero_vectors(u128::MAX)? {
        let elem = linalg::combine(fp, &c, a.rows(), a.ambient());
        let div = back_division(field, &FieldElement::from_coeffs(elem), a, b)?;
        for f in forms.iter().filter(|f| fp.dot(f, &c) != 0) {
            let h = linalg::right_kernel(fp, std::slice::from_ref(f), n);
            let image_h = Subspace::span(b.p(), b.ambient(), h.iter().map(|x| image(x)))?;
            if !div.is_subspace_of(&image_h) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
