//! Exhaustive enumeration of subspaces and ordered bases, with size guards.
//!
//! Subspaces of dimension d in F_p^m are streamed in lexicographic order of their
//! pivot sets, and within one pivot set in lexicographic order of the free echelon
//! entries (row-major, last entry varying fastest). Ordered bases of an n-dimensional
//! space are streamed as invertible n×n coefficient matrices over its echelon rows,
//! in lexicographic order of the row-major entries.

use crate::error::{Error, Result};
use crate::fp::{digits, pow_sat};
use crate::linalg;
use crate::subspace::{Basis, Subspace};

/// Default ceiling for predicted enumeration sizes.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// Gaussian binomial [n choose d]_q.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    let q = q as u128;
    // After step i the running value is [n choose i+1]_q, so every division is exact.
    let mut acc: u128 = 1;
    for i in 0..d {
        let num = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let den = q.pow((i + 1) as u32) - 1;
        match num.and_then(|x| acc.checked_mul(x)) {
            Some(v) => acc = v / den,
            None => return u128::MAX,
        }
    }
    acc
}

/// |GL_n(F_q)| = ∏_{i<n} (q^n - q^i).
pub fn gl_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    (0..n).fold(1u128, |acc, i| {
        acc.saturating_mul(q.pow(n as u32) - q.pow(i as u32))
    })
}

fn guard(predicted: u128, cap: u128) -> Result<()> {
    if predicted > cap {
        Err(Error::GuardExceeded { predicted, cap })
    } else {
        Ok(())
    }
}

/// Streams every d-dimensional subspace of F_p^ambient exactly once.
pub fn enumerate_subspaces(p: u32, ambient: usize, d: usize, cap: u128) -> Result<SubspaceIter> {
    if d > ambient {
        return Err(Error::DimensionMismatch {
            left: d,
            right: ambient,
        });
    }
    guard(gaussian_binomial(ambient, d, p as u64), cap)?;
    Ok(SubspaceIter::new(p, ambient, d))
}

pub struct SubspaceIter {
    p: u32,
    ambient: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: u64,
    count: u64,
}

impl SubspaceIter {
    fn new(p: u32, ambient: usize, d: usize) -> Self {
        let pivots: Vec<usize> = (0..d).collect();
        let mut it = SubspaceIter {
            p,
            ambient,
            pivots: Some(pivots),
            free: Vec::new(),
            counter: 0,
            count: 0,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        let Some(pivots) = &self.pivots else { return };
        self.free = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                ((pc + 1)..self.ambient)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        self.counter = 0;
        self.count = pow_sat(self.p as u64, self.free.len() as u64) as u64;
    }

    fn advance_pivots(&mut self) {
        let Some(piv) = self.pivots.as_mut() else {
            return;
        };
        let d = piv.len();
        let m = self.ambient;
        // next d-combination of 0..m in lexicographic order
        let mut i = d;
        while i > 0 {
            i -= 1;
            if piv[i] < m - d + i {
                piv[i] += 1;
                for j in i + 1..d {
                    piv[j] = piv[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.pivots = None;
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let pivots = self.pivots.as_ref()?;
        let d = pivots.len();
        let mut rows = vec![vec![0u32; self.ambient]; d];
        for (r, &c) in pivots.iter().enumerate() {
            rows[r][c] = 1;
        }
        let mut vals = digits(self.counter, self.p, self.free.len());
        vals.reverse();
        for (&(r, c), v) in self.free.iter().zip(vals) {
            rows[r][c] = v;
        }
        self.counter += 1;
        if self.counter >= self.count {
            self.advance_pivots();
        }
        Some(Subspace::from_rows_unchecked(self.p, self.ambient, rows))
    }
}

/// Streams every ordered basis of `space`. The guard applies to p^(n²), the
/// number of coefficient matrices scanned.
pub fn enumerate_bases(space: &Subspace, cap: u128) -> Result<impl Iterator<Item = Basis> + '_> {
    let n = space.dim();
    let p = space.p();
    let scanned = pow_sat(p as u64, (n * n) as u64);
    guard(scanned, cap)?;
    let fp = space.fp();
    Ok((0..scanned as u64).filter_map(move |idx| {
        let mut flat = digits(idx, p, n * n);
        flat.reverse();
        let m: Vec<Vec<u32>> = flat.chunks(n.max(1)).map(|c| c.to_vec()).take(n).collect();
        if linalg::rank(fp, &m, n) < n {
            return None;
        }
        Some(Basis::from_echelon_matrix(space, &m).expect("invertible"))
    }))
}

/// Every invertible n×n matrix over F_p, same order as [`enumerate_bases`].
pub fn enumerate_gl(p: u32, n: usize, cap: u128) -> Result<impl Iterator<Item = Vec<Vec<u32>>>> {
    let scanned = pow_sat(p as u64, (n * n) as u64);
    guard(scanned, cap)?;
    let fp = crate::fp::Fp::new(p);
    Ok((0..scanned as u64).filter_map(move |idx| {
        let mut flat = digits(idx, p, n * n);
        flat.reverse();
        let m: Vec<Vec<u32>> = flat.chunks(n.max(1)).map(|c| c.to_vec()).take(n).collect();
        (linalg::rank(fp, &m, n) == n).then_some(m)
    }))
}
