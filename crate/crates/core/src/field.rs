//! Exact arithmetic in F_{p^k} = F_p[t]/(f) and its subfield lattice.
//!
//! Elements are coefficient vectors in the power basis `1, t, ..., t^{k-1}`,
//! constant term first. The same little-endian convention is used for the
//! modulus and in every serialized form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{digits, is_prime, pow_sat, undigits, Fp};
use crate::subspace::Subspace;

/// Largest supported field order.
pub const MAX_ORDER: u128 = 1 << 32;

/// The extension K = F_p ⊂ L = F_{p^k}, immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    fp: Fp,
    k: usize,
    modulus: Vec<u32>,
}

/// An element of L in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

/// The subfield F_{p^d} of F_{p^k}, viewed as an F_p-subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldDescriptor {
    pub degree: usize,
    pub space: Subspace,
}

/// Field descriptor as it appears in instance files: `{"p": 2, "k": 4, "modulus": [1,1,0,0,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldElement {
    pub fn from_coeffs(coeffs: Vec<u32>) -> Self {
        FieldElement { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// Polynomial remainder of `a` by the monic `m`, both little-endian.
fn poly_rem(fp: Fp, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (j, &c) in m[..dm].iter().enumerate() {
                r[shift + j] = fp.sub(r[shift + j], fp.mul(lead, c));
            }
        }
    }
    r
}

/// Irreducibility by trial division against every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(fp: Fp, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    let p = fp.p();
    for d in 1..=deg / 2 {
        for idx in 0..pow_sat(p as u64, d as u64) as u64 {
            let mut g = digits(idx, p, d);
            g.push(1);
            if poly_rem(fp, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl ExtensionField {
    /// Builds F_{p^k}. Without a modulus, the monic irreducible of degree k whose
    /// little-endian coefficient vector has the smallest base-p value is used.
    pub fn new(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        if pow_sat(p, k as u64) > MAX_ORDER {
            return Err(Error::FieldTooLarge { p, k });
        }
        let fp = Fp::new(p as u32);
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k + 1 {
                    return Err(Error::ModulusLength {
                        k,
                        expected: k + 1,
                        got: m.len(),
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::CoefficientOutOfRange { value: c, p });
                }
                if m[k] != 1 {
                    return Err(Error::ModulusNotMonic);
                }
                let m: Vec<u32> = m.iter().map(|&c| c as u32).collect();
                if !is_irreducible(fp, &m) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None => Self::smallest_irreducible(fp, k),
        };
        Ok(ExtensionField { fp, k, modulus })
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        Self::new(d.p, d.k, d.modulus.as_deref())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p() as u64,
            k: self.k,
            modulus: Some(self.modulus.iter().map(|&c| c as u64).collect()),
        }
    }

    fn smallest_irreducible(fp: Fp, k: usize) -> Vec<u32> {
        if k == 1 {
            return vec![0, 1];
        }
        let p = fp.p();
        (0..pow_sat(p as u64, k as u64) as u64)
            .map(|idx| {
                let mut f = digits(idx, p, k);
                f.push(1);
                f
            })
            .find(|f| f[0] != 0 && is_irreducible(fp, f))
            .expect("an irreducible polynomial exists in every degree")
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements p^k.
    pub fn order(&self) -> u64 {
        pow_sat(self.p() as u64, self.k as u64) as u64
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement> {
        self.check_coords(&coeffs)?;
        Ok(FieldElement { coeffs })
    }

    /// Element from integer coefficients, reducing nothing: out-of-range entries are errors.
    pub fn element_from_u64(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.k {
            return Err(Error::MismatchedField);
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p() as u64) {
            return Err(Error::CoefficientOutOfRange {
                value: c,
                p: self.p() as u64,
            });
        }
        Ok(FieldElement {
            coeffs: coeffs.iter().map(|&c| c as u32).collect(),
        })
    }

    /// The element with index `i` in little-endian base-p order.
    pub fn element_at(&self, i: u64) -> FieldElement {
        FieldElement {
            coeffs: digits(i, self.p(), self.k),
        }
    }

    pub fn index_of(&self, x: &FieldElement) -> u64 {
        undigits(&x.coeffs, self.p())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.monomial(0)
    }

    /// t^i for i < k.
    pub fn monomial(&self, i: usize) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        coeffs[i] = 1;
        FieldElement { coeffs }
    }

    /// The class of t. For k = 1 this is the residue of t modulo t, i.e. 0.
    pub fn generator(&self) -> FieldElement {
        if self.k == 1 {
            self.zero()
        } else {
            self.monomial(1)
        }
    }

    pub(crate) fn check_coords(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.k {
            return Err(Error::MismatchedField);
        }
        if let Some(&c) = v.iter().find(|&&c| c >= self.p()) {
            return Err(Error::CoefficientOutOfRange {
                value: c as u64,
                p: self.p() as u64,
            });
        }
        Ok(())
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if x.coeffs.len() != self.k {
            return Err(Error::MismatchedField);
        }
        Ok(())
    }

    /// Whether `s` lives in this field's ambient coordinate space.
    pub fn owns(&self, s: &Subspace) -> bool {
        s.p() == self.p() && s.ambient() == self.k
    }

    pub(crate) fn check_space(&self, s: &Subspace) -> Result<()> {
        if self.owns(s) {
            Ok(())
        } else {
            Err(Error::MismatchedField)
        }
    }

    /// Product of coordinate vectors, reduced modulo the modulus.
    pub fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let k = self.k;
        let fp = self.fp;
        let mut prod = vec![0u64; 2 * k - 1];
        let p = self.p() as u64;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        if k == 1 {
            return prod;
        }
        poly_rem(fp, &prod, &self.modulus)
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| self.fp.add(a, b))
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| self.fp.sub(a, b))
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn neg(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        Ok(FieldElement {
            coeffs: x.coeffs.iter().map(|&a| self.fp.neg(a)).collect(),
        })
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(FieldElement {
            coeffs: self.mul_coords(&x.coeffs, &y.coeffs),
        })
    }

    pub fn pow(&self, x: &FieldElement, mut e: u64) -> Result<FieldElement> {
        self.check(x)?;
        let mut base = x.coeffs.clone();
        let mut acc = self.one().coeffs;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_coords(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_coords(&base, &base);
            }
        }
        Ok(FieldElement { coeffs: acc })
    }

    /// x^(p^k - 2), which is the inverse of every nonzero x.
    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        self.pow(x, self.order() - 2)
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, x: &FieldElement) -> Result<FieldElement> {
        self.pow(x, self.p() as u64)
    }

    /// x ↦ x^(p^d).
    pub fn frobenius_iter(&self, x: &FieldElement, d: usize) -> Result<FieldElement> {
        let mut y = x.clone();
        for _ in 0..d {
            y = self.frobenius(&y)?;
        }
        Ok(y)
    }

    /// Divisors of k in increasing order.
    pub fn degree_divisors(&self) -> Vec<usize> {
        (1..=self.k).filter(|d| self.k.is_multiple_of(*d)).collect()
    }

    /// Degree of x over F_p: the smallest d | k with x^(p^d) = x.
    pub fn element_degree(&self, x: &FieldElement) -> Result<usize> {
        self.check(x)?;
        for d in self.degree_divisors() {
            if self.frobenius_iter(x, d)? == *x {
                return Ok(d);
            }
        }
        unreachable!("x^(p^k) = x holds for every element")
    }

    /// F_{p^d} as the kernel of the F_p-linear map x ↦ x^(p^d) - x.
    pub fn subfield(&self, d: usize) -> Result<SubfieldDescriptor> {
        if d == 0 || !self.k.is_multiple_of(d) {
            return Err(Error::NotADivisor { d, k: self.k });
        }
        // Column j of the map is the image of t^j.
        let images: Vec<Vec<u32>> = (0..self.k)
            .map(|j| {
                let x = self.monomial(j);
                let y = self.frobenius_iter(&x, d).expect("same field");
                self.sub(&y, &x).expect("same field").coeffs
            })
            .collect();
        // Rows of the transposed matrix are the images; kernel vectors c satisfy Σ c_j images[j] = 0.
        let kernel = crate::linalg::left_kernel(self.fp, &images, self.k);
        let space = Subspace::span(self.p(), self.k, kernel)?;
        debug_assert_eq!(space.dim(), d);
        Ok(SubfieldDescriptor { degree: d, space })
    }

    /// Smallest degree d > 1 of a subfield over F_p, or `None` (infinity) when k = 1.
    pub fn n0(&self) -> Option<usize> {
        self.degree_divisors().into_iter().find(|&d| d > 1)
    }

    /// True when L/K has no intermediate field strictly between K and L.
    pub fn has_prime_degree_or_trivial(&self) -> bool {
        self.k == 1 || is_prime(self.k as u64)
    }
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p(), self.k, self.modulus)
    }
}

impl fmt::Display for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.p(), self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &ExtensionField, c: &[u32]) -> FieldElement {
        f.element(c.to_vec()).unwrap()
    }

    /// Exhaustive scan over monic cubics over F_2: which ones have no root?
    #[test]
    fn default_modulus_matches_exhaustive_scan() {
        let cubics_without_roots: Vec<Vec<u32>> = (0..8u64)
            .map(|i| {
                let mut f = digits(i, 2, 3);
                f.push(1);
                f
            })
            .filter(|f| {
                (0..2u32).all(|x| {
                    let v: u32 = f
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| c * x.pow(i as u32))
                        .sum();
                    v % 2 == 1
                })
            })
            .collect();
        assert_eq!(
            cubics_without_roots,
            vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]]
        );
        let f = ExtensionField::new(2, 3, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!(
            ExtensionField::new(2, 4, None).unwrap().modulus(),
            &[1, 1, 0, 0, 1]
        );
        assert_eq!(
            ExtensionField::new(2, 2, None).unwrap().modulus(),
            &[1, 1, 1]
        );
    }

    #[test]
    fn prime_field_is_degenerate_extension() {
        let f = ExtensionField::new(2, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
        let one = f.one();
        assert_eq!(f.mul(&one, &one).unwrap(), one);
        assert_eq!(f.n0(), None);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(ExtensionField::new(4, 2, None), Err(Error::NonPrime(4)));
        assert_eq!(ExtensionField::new(2, 0, None), Err(Error::ZeroDegree));
        assert!(matches!(
            ExtensionField::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(matches!(
            ExtensionField::new(2, 3, Some(&[1, 1, 1])),
            Err(Error::ModulusLength { .. })
        ));
        assert_eq!(
            ExtensionField::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::ModulusNotMonic)
        );
        assert!(matches!(
            ExtensionField::new(2, 40, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn products_forced_by_reduction() {
        let f8 = ExtensionField::new(2, 3, None).unwrap();
        assert_eq!(
            f8.mul(&el(&f8, &[0, 1, 0]), &el(&f8, &[0, 0, 1])).unwrap(),
            el(&f8, &[1, 1, 0])
        );
        let x = el(&f8, &[1, 0, 1]);
        assert_eq!(f8.mul(&x, &f8.one()).unwrap(), x);
        let f4 = ExtensionField::new(2, 2, None).unwrap();
        let t = f4.generator();
        assert_eq!(f4.mul(&t, &t).unwrap(), el(&f4, &[1, 1]));
    }

    #[test]
    fn mismatched_elements_rejected() {
        let f8 = ExtensionField::new(2, 3, None).unwrap();
        let short = FieldElement::from_coeffs(vec![1, 0]);
        assert_eq!(f8.mul(&short, &f8.one()), Err(Error::MismatchedField));
        assert!(f8.element(vec![2, 0, 0]).is_err());
    }

    #[test]
    fn inverse_of_t_in_f8() {
        let f8 = ExtensionField::new(2, 3, None).unwrap();
        let t = f8.generator();
        // exhaustive search over the nonzero elements
        let found: Vec<FieldElement> = (1..8)
            .map(|i| f8.element_at(i))
            .filter(|y| f8.mul(&t, y).unwrap() == f8.one())
            .collect();
        assert_eq!(found, vec![el(&f8, &[1, 0, 1])]);
        assert_eq!(f8.inv(&t).unwrap(), el(&f8, &[1, 0, 1]));
        assert_eq!(f8.inv(&f8.one()).unwrap(), f8.one());
        assert_eq!(f8.inv(&f8.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn inverse_exhaustive_small_fields() {
        for (p, k) in [(2u64, 4usize), (3, 3), (5, 2), (2, 8), (7, 2)] {
            let f = ExtensionField::new(p, k, None).unwrap();
            for i in 1..f.order() {
                let x = f.element_at(i);
                let y = f.inv(&x).unwrap();
                assert_eq!(f.mul(&x, &y).unwrap(), f.one());
                assert_eq!(f.mul(&y, &x).unwrap(), f.one());
            }
        }
    }

    #[test]
    fn subfield_of_f16() {
        let f = ExtensionField::new(2, 4, None).unwrap();
        let sub = f.subfield(2).unwrap();
        let mut elems: Vec<FieldElement> = sub.space.elements(1 << 10).unwrap().collect();
        elems.sort();
        let mut expected = vec![
            el(&f, &[0, 0, 0, 0]),
            el(&f, &[1, 0, 0, 0]),
            el(&f, &[0, 1, 1, 0]),
            el(&f, &[1, 1, 1, 0]),
        ];
        expected.sort();
        assert_eq!(elems, expected);
        for x in &elems {
            for y in &elems {
                assert!(sub.space.contains(f.mul(x, y).unwrap().coeffs()));
            }
        }
        let prime = f.subfield(1).unwrap();
        assert_eq!(prime.space.dim(), 1);
        assert!(prime.space.contains(f.one().coeffs()));
        assert_eq!(f.subfield(3), Err(Error::NotADivisor { d: 3, k: 4 }));
    }

    #[test]
    fn subfield_sizes_exhaustive() {
        for (p, k) in [(2u64, 6usize), (3, 4), (2, 4), (5, 2)] {
            let f = ExtensionField::new(p, k, None).unwrap();
            for d in f.degree_divisors() {
                let s = f.subfield(d).unwrap();
                let elems: Vec<FieldElement> = s.space.elements(4096).unwrap().collect();
                assert_eq!(elems.len() as u64, p.pow(d as u32));
                assert!(s.space.contains(f.one().coeffs()));
                for x in &elems {
                    for y in elems.iter().take(16) {
                        assert!(s.space.contains(f.mul(x, y).unwrap().coeffs()));
                    }
                }
            }
        }
    }

    #[test]
    fn n0_values() {
        assert_eq!(ExtensionField::new(2, 9, None).unwrap().n0(), Some(3));
        assert_eq!(ExtensionField::new(2, 4, None).unwrap().n0(), Some(2));
        assert_eq!(ExtensionField::new(2, 5, None).unwrap().n0(), Some(5));
        assert_eq!(ExtensionField::new(2, 1, None).unwrap().n0(), None);
    }

    #[test]
    fn element_degrees() {
        let f = ExtensionField::new(2, 4, None).unwrap();
        assert_eq!(f.element_degree(&f.one()).unwrap(), 1);
        let t = f.generator();
        assert_ne!(f.frobenius_iter(&t, 1).unwrap(), t);
        assert_ne!(f.frobenius_iter(&t, 2).unwrap(), t);
        assert_eq!(f.element_degree(&t).unwrap(), 4);
        let w = el(&f, &[0, 1, 1, 0]);
        assert_eq!(f.pow(&w, 4).unwrap(), w);
        assert_eq!(f.element_degree(&w).unwrap(), 2);
    }

    #[test]
    fn element_degree_divides_and_lands_in_subfield() {
        let f = ExtensionField::new(2, 6, None).unwrap();
        let subs: Vec<SubfieldDescriptor> = f
            .degree_divisors()
            .iter()
            .map(|&d| f.subfield(d).unwrap())
            .collect();
        for i in 0..f.order() {
            let x = f.element_at(i);
            let d = f.element_degree(&x).unwrap();
            assert_eq!(f.k() % d, 0);
            let s = subs.iter().find(|s| s.degree == d).unwrap();
            assert!(s.space.contains(x.coeffs()));
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        let f = ExtensionField::new(3, 4, None).unwrap();
        for i in (0..f.order()).step_by(7) {
            for j in (0..f.order()).step_by(11) {
                let (x, y) = (f.element_at(i), f.element_at(j));
                let fx = f.frobenius(&x).unwrap();
                let fy = f.frobenius(&y).unwrap();
                assert_eq!(
                    f.frobenius(&f.add(&x, &y).unwrap()).unwrap(),
                    f.add(&fx, &fy).unwrap()
                );
                assert_eq!(
                    f.frobenius(&f.mul(&x, &y).unwrap()).unwrap(),
                    f.mul(&fx, &fy).unwrap()
                );
            }
        }
    }
}
