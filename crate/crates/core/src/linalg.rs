//! Dense Gaussian elimination over F_p. Matrices are row-major `Vec<Vec<u32>>`.

use crate::fp::Fp;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot columns.
/// Zero rows are dropped; surviving rows are ordered by pivot column.
pub fn rref_in_place(fp: Fp, rows: &mut Vec<Vec<u32>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = fp.inv(rows[r][col]).expect("nonzero pivot");
        fp.scale(inv, &mut rows[r]);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = fp.neg(row[col]);
                fp.axpy(row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(fp: Fp, rows: &[Vec<u32>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref_in_place(fp, &mut m, ncols).len()
}

/// Basis of `{x : M x = 0}` for an `m × ncols` matrix `M`.
pub fn right_kernel(fp: Fp, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref_in_place(fp, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u32; ncols];
            x[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = fp.neg(row[f]);
            }
            x
        })
        .collect()
}

/// Basis of `{c : Σ c_i rows[i] = 0}`.
pub fn left_kernel(fp: Fp, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    right_kernel(fp, &transpose(rows, ncols), rows.len())
}

pub fn transpose(rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(fp: Fp, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u32>> = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| {
            debug_assert_eq!(row.len(), n);
            row.iter().copied().chain(id).collect()
        })
        .collect();
    let pivots = rref_in_place(fp, &mut aug, 2 * n);
    // [M | I] always has rank n; M is invertible iff every pivot lands in the left block.
    if pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `a · b` for `a` of shape `r × s` and `b` of shape `s × t`.
pub fn mat_mul(fp: Fp, a: &[Vec<u32>], b: &[Vec<u32>], t: usize) -> Vec<Vec<u32>> {
    a.iter()
        .map(|row| {
            let mut out = vec![0u32; t];
            for (&c, brow) in row.iter().zip(b) {
                fp.axpy(&mut out, c, brow);
            }
            out
        })
        .collect()
}

/// `Σ coeffs[i] · vectors[i]`.
pub fn combine(fp: Fp, coeffs: &[u32], vectors: &[Vec<u32>], ncols: usize) -> Vec<u32> {
    let mut out = vec![0u32; ncols];
    for (&c, v) in coeffs.iter().zip(vectors) {
        fp.axpy(&mut out, c, v);
    }
    out
}
