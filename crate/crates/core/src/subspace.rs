//! F_p-subspaces of a coordinate space F_p^m in canonical reduced echelon form,
//! and the multiplicative subspace calculus inside L = F_{p^k}.
//!
//! A [`Subspace`] is just a row-reduced basis matrix, so two subspaces are equal
//! exactly when their matrices are identical. Subspaces of L use the field's
//! power-basis coordinates (ambient dimension k); the dual spaces B* used by the
//! matching construction are ordinary coordinate spaces F_p^n.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{ExtensionField, FieldElement};
use crate::fp::{digits, pow_sat, Fp};
use crate::linalg;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: linalg::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary generators, canonicalized.
    pub fn span<I>(p: u32, ambient: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for g in gens {
            if g.len() != ambient {
                return Err(Error::MismatchedField);
            }
            if let Some(&c) = g.iter().find(|&&c| c >= p) {
                return Err(Error::CoefficientOutOfRange {
                    value: c as u64,
                    p: p as u64,
                });
            }
            rows.push(g);
        }
        Ok(Self::from_rows_unchecked(p, ambient, rows))
    }

    pub(crate) fn from_rows_unchecked(p: u32, ambient: usize, mut rows: Vec<Vec<u32>>) -> Self {
        let pivots = linalg::rref_in_place(Fp::new(p), &mut rows, ambient);
        Subspace {
            p,
            ambient,
            rows,
            pivots,
        }
    }

    /// Span of field elements inside `field`.
    pub fn span_elements(field: &ExtensionField, elements: &[FieldElement]) -> Result<Self> {
        for e in elements {
            field.check_coords(e.coeffs())?;
        }
        Self::span(
            field.p(),
            field.k(),
            elements.iter().map(|e| e.coeffs().to_vec()),
        )
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn fp(&self) -> Fp {
        Fp::new(self.p)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The canonical echelon rows.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.p == other.p && self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::MismatchedField)
        }
    }

    /// Residue of `v` after clearing every pivot column.
    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let fp = self.fp();
        let mut r = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if r[c] != 0 {
                let s = fp.neg(r[c]);
                fp.axpy(&mut r, s, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Whether the element 1 (the first power-basis vector) lies in the subspace.
    pub fn contains_one(&self) -> bool {
        // In reduced echelon form e_0 is in the span iff the first row is exactly e_0.
        match self.rows.first() {
            Some(r) => self.pivots[0] == 0 && r[1..].iter().all(|&c| c == 0),
            None => false,
        }
    }

    /// Coordinates of `v` against the echelon rows, if `v` belongs to the subspace.
    pub fn echelon_coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&c| v[c]).collect())
        } else {
            None
        }
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.p == other.p
            && self.ambient == other.ambient
            && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_rows_unchecked(self.p, self.ambient, rows))
    }

    /// Zassenhaus: reduce `[a | a]` over `[b | 0]`; rows with vanishing left half span A ∩ B.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.p, self.ambient));
        }
        let m = self.ambient;
        let mut block: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|a| a.iter().chain(a.iter()).copied().collect())
            .chain(
                other
                    .rows
                    .iter()
                    .map(|b| b.iter().copied().chain(std::iter::repeat_n(0, m)).collect()),
            )
            .collect();
        let pivots = linalg::rref_in_place(self.fp(), &mut block, 2 * m);
        let rows = block
            .into_iter()
            .zip(pivots)
            .filter(|&(_, c)| c >= m)
            .map(|(r, _)| r[m..].to_vec())
            .collect();
        Ok(Self::from_rows_unchecked(self.p, self.ambient, rows))
    }

    /// Number of vectors, p^dim, saturating.
    pub fn cardinality(&self) -> u128 {
        pow_sat(self.p as u64, self.dim() as u64)
    }

    /// Every vector of the subspace (zero first), refusing when p^dim exceeds `cap`.
    pub fn vectors(&self, cap: u128) -> Result<impl Iterator<Item = Vec<u32>> + '_> {
        let count = self.cardinality();
        if count > cap {
            return Err(Error::GuardExceeded {
                predicted: count,
                cap,
            });
        }
        let fp = self.fp();
        Ok((0..count as u64).map(move |i| {
            let c = digits(i, self.p, self.dim());
            linalg::combine(fp, &c, &self.rows, self.ambient)
        }))
    }

    /// Every nonzero vector of the subspace.
    pub fn nonzero_vectors(&self, cap: u128) -> Result<impl Iterator<Item = Vec<u32>> + '_> {
        Ok(self.vectors(cap)?.skip(1))
    }

    /// [`Self::vectors`] wrapped as field elements.
    pub fn elements(&self, cap: u128) -> Result<impl Iterator<Item = FieldElement> + '_> {
        Ok(self.vectors(cap)?.map(FieldElement::from_coeffs))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.rows)
    }
}

/// An ordered basis of a subspace.
#[derive(Clone, PartialEq, Eq)]
pub struct Basis {
    vectors: Vec<Vec<u32>>,
    parent: Subspace,
    /// Inverse of the matrix expressing `vectors` in echelon coordinates.
    to_basis: Vec<Vec<u32>>,
}

impl Basis {
    /// Validates that `vectors` is an ordered basis of `parent`.
    pub fn new(parent: &Subspace, vectors: Vec<Vec<u32>>) -> Result<Self> {
        if vectors.len() != parent.dim() {
            return Err(Error::BasisMismatch);
        }
        let mut gram = Vec::with_capacity(vectors.len());
        for v in &vectors {
            gram.push(parent.echelon_coords(v).ok_or(Error::BasisMismatch)?);
        }
        let to_basis = linalg::inverse(parent.fp(), &gram).ok_or(Error::Dependent)?;
        Ok(Basis {
            vectors,
            parent: parent.clone(),
            to_basis,
        })
    }

    /// The basis `vectors` of their own span; errors if they are dependent.
    pub fn from_vectors(p: u32, ambient: usize, vectors: Vec<Vec<u32>>) -> Result<Self> {
        let parent = Subspace::span(p, ambient, vectors.iter().cloned())?;
        if parent.dim() != vectors.len() {
            return Err(Error::Dependent);
        }
        Self::new(&parent, vectors)
    }

    pub fn from_elements(field: &ExtensionField, elements: &[FieldElement]) -> Result<Self> {
        for e in elements {
            field.check_coords(e.coeffs())?;
        }
        Self::from_vectors(
            field.p(),
            field.k(),
            elements.iter().map(|e| e.coeffs().to_vec()).collect(),
        )
    }

    /// The echelon rows of `parent`, in order.
    pub fn echelon(parent: &Subspace) -> Self {
        let n = parent.dim();
        Basis {
            vectors: parent.rows.clone(),
            parent: parent.clone(),
            to_basis: linalg::identity(n),
        }
    }

    /// The basis whose i-th vector is `Σ_j m[i][j] · row_j` for an invertible `m`.
    pub fn from_echelon_matrix(parent: &Subspace, m: &[Vec<u32>]) -> Result<Self> {
        let fp = parent.fp();
        if m.len() != parent.dim() {
            return Err(Error::DimensionMismatch {
                left: m.len(),
                right: parent.dim(),
            });
        }
        let to_basis = linalg::inverse(fp, m).ok_or(Error::Singular)?;
        let vectors = linalg::mat_mul(fp, m, &parent.rows, parent.ambient);
        Ok(Basis {
            vectors,
            parent: parent.clone(),
            to_basis,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    pub fn element(&self, i: usize) -> FieldElement {
        FieldElement::from_coeffs(self.vectors[i].clone())
    }

    pub fn elements(&self) -> Vec<FieldElement> {
        self.vectors
            .iter()
            .cloned()
            .map(FieldElement::from_coeffs)
            .collect()
    }

    pub fn parent(&self) -> &Subspace {
        &self.parent
    }

    /// Coordinates of `v` in this basis.
    pub fn coords(&self, v: &[u32]) -> Result<Vec<u32>> {
        let e = self.parent.echelon_coords(v).ok_or(Error::NotContained)?;
        let fp = self.parent.fp();
        Ok(linalg::mat_mul(fp, &[e], &self.to_basis, self.len()).remove(0))
    }

    /// Span of all basis vectors except the `i`-th (1-based).
    pub fn hyperplane_omitting(&self, i: usize) -> Result<Subspace> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let rows = self
            .vectors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != i)
            .map(|(_, v)| v.clone())
            .collect();
        Ok(Subspace::from_rows_unchecked(
            self.parent.p,
            self.parent.ambient,
            rows,
        ))
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Basis{:?}", self.vectors)
    }
}

/// A linear form on B, written in the coordinates of a fixed reference basis of B.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualFunctional(pub Vec<u32>);

impl DualFunctional {
    pub fn apply(&self, reference: &Basis, v: &[u32]) -> Result<u32> {
        let c = reference.coords(v)?;
        Ok(reference.parent.fp().dot(&self.0, &c))
    }
}

/// A basis of C^⊥ ⊂ B*: `dim B - dim C` independent forms vanishing on C.
pub fn annihilator(c: &Subspace, reference: &Basis) -> Result<Vec<DualFunctional>> {
    let b = reference.parent();
    if !c.is_subspace_of(b) {
        return Err(Error::NotContained);
    }
    let coords: Vec<Vec<u32>> = c
        .rows()
        .iter()
        .map(|r| reference.coords(r))
        .collect::<Result<_>>()?;
    Ok(linalg::right_kernel(b.fp(), &coords, reference.len())
        .into_iter()
        .map(DualFunctional)
        .collect())
}

/// The basis b_1..b_n of B with φ_i(b_j) = δ_ij, given n independent forms φ_i.
pub fn dual_basis_to_primal(functionals: &[DualFunctional], reference: &Basis) -> Result<Basis> {
    let n = reference.len();
    if functionals.len() != n {
        return Err(Error::DimensionMismatch {
            left: functionals.len(),
            right: n,
        });
    }
    if let Some(f) = functionals.iter().find(|f| f.0.len() != n) {
        return Err(Error::DimensionMismatch {
            left: f.0.len(),
            right: n,
        });
    }
    let b = reference.parent();
    let fp = b.fp();
    let phi: Vec<Vec<u32>> = functionals.iter().map(|f| f.0.clone()).collect();
    // Φ X = I where column j of X holds the reference coordinates of b_j.
    let x = linalg::inverse(fp, &phi).ok_or(Error::Singular)?;
    let xt = linalg::transpose(&x, n);
    let vectors = xt
        .iter()
        .map(|col| linalg::combine(fp, col, reference.vectors(), b.ambient()))
        .collect();
    Basis::new(b, vectors)
}

/// The image aA of A under x ↦ a·x.
pub fn scale_left(field: &ExtensionField, a: &FieldElement, s: &Subspace) -> Result<Subspace> {
    field.check_coords(a.coeffs())?;
    field.check_space(s)?;
    if a.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let rows = s
        .rows()
        .iter()
        .map(|r| field.mul_coords(a.coeffs(), r))
        .collect();
    Ok(Subspace::from_rows_unchecked(s.p, s.ambient, rows))
}

/// a⁻¹A ∩ B = {x ∈ B : a·x ∈ A}, by image-then-intersect.
pub fn back_division(
    field: &ExtensionField,
    a: &FieldElement,
    sa: &Subspace,
    sb: &Subspace,
) -> Result<Subspace> {
    field.check_space(sb)?;
    if a.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let inv = field.inv(a)?;
    scale_left(field, &inv, sa)?.intersect(sb)
}

/// ⟨AB⟩, spanned by products of echelon basis vectors.
pub fn product_span(field: &ExtensionField, sa: &Subspace, sb: &Subspace) -> Result<Subspace> {
    field.check_space(sa)?;
    field.check_space(sb)?;
    let mut rows = Vec::with_capacity(sa.dim() * sb.dim());
    for a in sa.rows() {
        for b in sb.rows() {
            rows.push(field.mul_coords(a, b));
        }
    }
    Ok(Subspace::from_rows_unchecked(sa.p, sa.ambient, rows))
}
