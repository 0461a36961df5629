//! Integer chain complexes: graded bases with boundary matrices composing
//! to zero.

use crate::indexed::IndexedComplex;
use crate::matrix::SparseIntMatrix;
use crate::{RegularCWComplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("boundary matrix {index} maps rank {cols} to rank {rows}, but the next grade has rank {expected}")]
    ShapeMismatch {
        index: usize,
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("∂∂ ≠ 0: product of D_{dim} and D_{next} has entry {value} at ({row}, {col})", next = dim + 1)]
    NonZeroProduct {
        dim: usize,
        row: usize,
        col: usize,
        value: i64,
    },
    #[error(transparent)]
    Rcc(#[from] crate::cw::RccError),
}

/// A chain complex of free abelian groups. `boundary(i)` is the matrix of
/// `∂_i: C_i -> C_{i-1}` over the stored bases, `i = 1..=dim`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
    basis: Vec<Vec<String>>,
}

impl ChainComplex {
    /// Assembles a chain complex from parts, checking shapes. `boundaries[k]`
    /// must map grade `k+1` to grade `k`.
    pub fn from_parts(
        ranks: Vec<usize>,
        boundaries: Vec<SparseIntMatrix>,
        basis: Vec<Vec<String>>,
    ) -> Result<Self, ChainError> {
        assert_eq!(ranks.len(), basis.len(), "basis per grade");
        assert_eq!(boundaries.len() + 1, ranks.len(), "one matrix per step");
        for (k, b) in boundaries.iter().enumerate() {
            if b.nrows() != ranks[k] || b.ncols() != ranks[k + 1] {
                return Err(ChainError::ShapeMismatch {
                    index: k + 1,
                    rows: b.nrows(),
                    cols: b.ncols(),
                    expected: ranks[k],
                });
            }
        }
        Ok(Self {
            ranks,
            boundaries,
            basis,
        })
    }

    /// Boundary matrices of an indexed complex: one column per cell,
    /// holding its signed facets.
    pub fn from_indexed(ix: &IndexedComplex) -> Self {
        let top = ix.top_dim();
        let ranks: Vec<usize> = (0..=top).map(|d| ix.count_of_dim(d)).collect();
        let basis: Vec<Vec<String>> = (0..=top)
            .map(|d| ix.cells_of_dim(d).map(|c| ix.label(c).to_string()).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(top);
        for d in 1..=top {
            let lower_start = ix.cells_of_dim(d - 1).start;
            let upper = ix.cells_of_dim(d);
            let upper_start = upper.start;
            let mut m = SparseIntMatrix::zeros(ranks[d - 1], ranks[d]);
            for tau in upper {
                for &(sigma, sign) in ix.facets(tau) {
                    m.push(sigma - lower_start, tau - upper_start, sign as i64);
                }
            }
            boundaries.push(m);
        }
        Self {
            ranks,
            boundaries,
            basis,
        }
    }

    /// Top grade of the complex.
    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Rank of `C_i`.
    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn basis_labels(&self, i: usize) -> &[String] {
        &self.basis[i]
    }

    /// The matrix of `∂_i` for `i = 1..=dim`; `None` outside that range.
    pub fn boundary(&self, i: usize) -> Option<&SparseIntMatrix> {
        if i == 0 || i > self.boundaries.len() {
            None
        } else {
            Some(&self.boundaries[i - 1])
        }
    }

    /// Checks `∂_i ∘ ∂_{i+1} = 0` for every consecutive pair, reporting the
    /// first nonzero entry found.
    pub fn verify(&self) -> Result<(), ChainError> {
        for i in 1..self.boundaries.len() {
            let lower = &self.boundaries[i - 1];
            let upper = &self.boundaries[i];
            if lower.ncols() != upper.nrows() {
                return Err(ChainError::ShapeMismatch {
                    index: i + 1,
                    rows: upper.nrows(),
                    cols: upper.ncols(),
                    expected: lower.ncols(),
                });
            }
            let product = lower.mul(upper);
            let first = product.entries().next();
            if let Some((row, col, value)) = first {
                return Err(ChainError::NonZeroProduct {
                    dim: i,
                    row,
                    col,
                    value,
                });
            }
        }
        Ok(())
    }
}

/// The simplicial chain complex of `k`: bases are the simplices in
/// ascending lexicographic order per dimension, columns follow the
/// alternating boundary formula.
pub fn chain_complex_from_simplicial(k: &SimplicialComplex) -> ChainComplex {
    ChainComplex::from_indexed(&IndexedComplex::from_simplicial(k))
}

/// The chain complex of a regular CW complex, computed through its cone
/// triangulation (the encoding stores no attaching degrees, and the
/// triangulation has the same homology).
pub fn chain_complex_from_rcc(x: &RegularCWComplex) -> Result<ChainComplex, ChainError> {
    let (tri, _) = x.triangulate()?;
    Ok(chain_complex_from_simplicial(&tri))
}
