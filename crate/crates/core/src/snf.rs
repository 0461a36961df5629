//! Smith normal form over the integers.
//!
//! Boundary matrices are large and extremely sparse, so the main entry
//! point first eliminates ±1 pivots sparsely (choosing pivots by Markowitz
//! cost to limit fill-in) and only then runs a dense minimal-pivot
//! reduction on the small residue, with arbitrary-precision entries where
//! the sparse phase would overflow. A separate dense variant tracks the
//! unimodular row and column transforms.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, SparseIntMatrix};

/// The diagonal of the Smith normal form, with divisibility-ordered
/// invariant factors followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    rows: usize,
    cols: usize,
    /// `min(rows, cols)` entries, nonzero first, each dividing the next.
    pub diagonal: Vec<BigInt>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithNormalForm {
    /// The nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }

    /// Invariant factors greater than one: the torsion coefficients of the
    /// cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors()
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }

    /// Materializes the diagonal matrix `S`.
    pub fn matrix(&self) -> IntMatrix {
        let mut s = IntMatrix::zeros(self.rows, self.cols);
        for (k, d) in self.diagonal.iter().enumerate() {
            s[(k, k)] = d.clone();
        }
        s
    }
}

/// Smith normal form of a sparse integer matrix.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithNormalForm {
    let rows = m.nrows();
    let cols = m.ncols();
    let n = rows.min(cols);
    let (units, residual) = match sparse_unit_phase(m) {
        Ok(pair) => pair,
        // entries outgrew the fixed-width fast path: redo everything dense
        Err(Overflow) => (0, m.to_dense()),
    };
    let mut dense = residual;
    dense_snf(&mut dense, None, None);
    let mut diagonal = vec![BigInt::one(); units];
    for k in 0..dense.nrows().min(dense.ncols()) {
        diagonal.push(dense[(k, k)].clone());
    }
    diagonal.retain(|d| !d.is_zero());
    let rank = diagonal.len();
    diagonal.resize(n, BigInt::zero());
    SmithNormalForm {
        rows,
        cols,
        diagonal,
        rank,
    }
}

/// Dense Smith normal form `U * M * V = S` with unimodular `U`, `V`.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.nrows().min(self.s.ncols());
        (0..n).map(|k| self.s[(k, k)].clone()).collect()
    }
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SnfDecomposition {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut v = IntMatrix::identity(m.ncols());
    dense_snf(&mut s, Some(&mut u), Some(&mut v));
    let n = m.nrows().min(m.ncols());
    let rank = (0..n).take_while(|&k| !s[(k, k)].is_zero()).count();
    SnfDecomposition { u, s, v, rank }
}

struct Overflow;

/// Eliminates ±1 pivots on sparse row/column maps, returning the number of
/// unit pivots taken and the dense residual matrix.
fn sparse_unit_phase(m: &SparseIntMatrix) -> Result<(usize, IntMatrix), Overflow> {
    let mut rows: Vec<HashMap<usize, i128>> = vec![HashMap::new(); m.nrows()];
    let mut cols: Vec<HashMap<usize, i128>> = vec![HashMap::new(); m.ncols()];
    for (i, j, v) in m.entries() {
        rows[i].insert(j, v as i128);
        cols[j].insert(i, v as i128);
    }

    let mut units = 0usize;
    loop {
        // gather current ±1 entries, cheapest fill first
        let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (&c, &v) in row {
                if v == 1 || v == -1 {
                    let cost = (row.len() - 1) * (cols[c].len() - 1);
                    candidates.push((cost, r, c));
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        candidates.sort_unstable();
        let mut progressed = false;
        for (_, r, c) in candidates {
            let p = match rows[r].get(&c) {
                Some(&v) if v == 1 || v == -1 => v,
                _ => continue, // stale candidate
            };
            progressed = true;
            let pivot_row: Vec<(usize, i128)> = rows[r]
                .iter()
                .filter(|(&j, _)| j != c)
                .map(|(&j, &v)| (j, v))
                .collect();
            let pivot_col: Vec<(usize, i128)> = cols[c]
                .iter()
                .filter(|(&i, _)| i != r)
                .map(|(&i, &v)| (i, v))
                .collect();
            for &(r2, a) in &pivot_col {
                // row_r2 -= (a / p) * row_r, with p in {+1, -1}
                let factor = a.checked_mul(p).ok_or(Overflow)?;
                for &(c2, b) in &pivot_row {
                    let delta = factor.checked_mul(b).ok_or(Overflow)?;
                    let old = rows[r2].get(&c2).copied().unwrap_or(0);
                    let new = old.checked_sub(delta).ok_or(Overflow)?;
                    if new == 0 {
                        rows[r2].remove(&c2);
                        cols[c2].remove(&r2);
                    } else {
                        rows[r2].insert(c2, new);
                        cols[c2].insert(r2, new);
                    }
                }
                rows[r2].remove(&c);
            }
            for &(c2, _) in &pivot_row {
                cols[c2].remove(&r);
            }
            rows[r].clear();
            cols[c].clear();
            units += 1;
        }
        if !progressed {
            break;
        }
    }

    // compact the residual into a dense matrix
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    let col_index: HashMap<usize, usize> = live_cols
        .iter()
        .enumerate()
        .map(|(k, &c)| (c, k))
        .collect();
    let mut residual = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (i, &r) in live_rows.iter().enumerate() {
        for (&c, &v) in &rows[r] {
            residual[(i, col_index[&c])] = BigInt::from(v);
        }
    }
    Ok((units, residual))
}

/// In-place dense reduction with minimal-absolute-value pivoting. When
/// transform accumulators are supplied, every row operation is mirrored on
/// `u` and every column operation on `v`, so `u * input * v` equals the
/// reduced matrix.
fn dense_snf(a: &mut IntMatrix, mut u: Option<&mut IntMatrix>, mut v: Option<&mut IntMatrix>) {
    let rows = a.nrows();
    let cols = a.ncols();
    let n = rows.min(cols);
    for k in 0..n {
        loop {
            // minimal nonzero |entry| in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !a[(i, j)].is_zero()
                        && pivot.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                normalize_signs(a, &mut u, k);
                return;
            };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(k, pi);
            }
            if let Some(v) = v.as_deref_mut() {
                v.swap_cols(k, pj);
            }

            let mut clean = true;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, k)] / &a[(k, k)]);
                a.add_row_multiple(i, k, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(i, k, &q);
                }
                if !a[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(k, j)] / &a[(k, k)]);
                a.add_col_multiple(j, k, &q);
                if let Some(v) = v.as_deref_mut() {
                    v.add_col_multiple(j, k, &q);
                }
                if !a[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: d_k must divide the rest of the submatrix
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[(i, j)] % &a[(k, k)]).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row_multiple(k, i, &one);
                    if let Some(u) = u.as_deref_mut() {
                        u.add_row_multiple(k, i, &one);
                    }
                }
                None => break,
            }
        }
    }
    normalize_signs(a, &mut u, n);
}

fn normalize_signs(a: &mut IntMatrix, u: &mut Option<&mut IntMatrix>, upto: usize) {
    for k in 0..upto.min(a.nrows().min(a.ncols())) {
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(k);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_of(rows: &[Vec<i64>]) -> SmithNormalForm {
        smith_normal_form(&IntMatrix::from_rows(rows).to_sparse())
    }

    fn diag_i64(s: &SmithNormalForm) -> Vec<i64> {
        s.diagonal
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn worked_two_by_two() {
        // [[2,4],[6,8]] has invariant factors 2 and 4 (det = -8)
        let s = snf_of(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(diag_i64(&s), vec![2, 4]);
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn identity_is_fixed() {
        let s = snf_of(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(diag_i64(&s), vec![1, 1, 1]);
    }

    #[test]
    fn zero_matrix() {
        let s = snf_of(&[vec![0, 0], vec![0, 0], vec![0, 0]]);
        assert_eq!(s.rank, 0);
        assert_eq!(diag_i64(&s), vec![0, 0]);
    }

    #[test]
    fn torsion_extraction() {
        // boundary of the relator matrix [[2]] in a bigger shape
        let s = snf_of(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(s.torsion(), vec![BigInt::from(2)]);
    }

    #[test]
    fn known_four_by_four() {
        let s = snf_of(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        assert_eq!(diag_i64(&s), vec![1, 3, 21, 0]);
        assert_eq!(s.rank, 3);
    }

    #[test]
    fn transforms_are_unimodular() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let dec = smith_normal_form_with_transforms(&m);
        assert_eq!(dec.u.mul(&m).mul(&dec.v), dec.s);
        assert_eq!(dec.u.determinant().abs(), BigInt::one());
        assert_eq!(dec.v.determinant().abs(), BigInt::one());
        // same invariant factors through the sparse route
        let sparse = smith_normal_form(&m.to_sparse());
        assert_eq!(sparse.diagonal, dec.diagonal());
    }

    #[test]
    fn divisibility_chain_holds() {
        let s = snf_of(&[vec![2, 1, 0], vec![0, 2, 1], vec![0, 0, 2]]);
        let factors = s.invariant_factors();
        for w in factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
    }
}
