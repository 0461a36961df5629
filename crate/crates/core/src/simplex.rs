//! Simplices, orientations, and the boundary operator on oriented simplices.

use std::collections::BTreeMap;
use std::fmt;

use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplexError {
    #[error("a simplex needs at least one vertex")]
    Empty,
    #[error("vertex {0} repeats within one simplex")]
    DuplicateVertex(Vertex),
}

/// A combinatorial simplex: a non-empty set of vertex labels, stored in
/// strictly ascending order. Its dimension is one less than its vertex count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<Vertex>,
}

impl Simplex {
    /// Builds a simplex from vertex labels in any order. Duplicates are
    /// rejected; the labels are sorted internally.
    pub fn new(vertices: impl Into<Vec<Vertex>>) -> Result<Self, SimplexError> {
        let mut vertices = vertices.into();
        if vertices.is_empty() {
            return Err(SimplexError::Empty);
        }
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(SimplexError::DuplicateVertex(w[0]));
            }
        }
        Ok(Self { vertices })
    }

    /// Single-vertex simplex.
    pub fn vertex(v: Vertex) -> Self {
        Self { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// All codimension-1 faces, in the order "drop the `j`-th vertex",
    /// `j = 0, 1, ...`. A vertex has no facets.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.dim() == 0 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|j| {
                let mut v = self.vertices.clone();
                v.remove(j);
                Simplex { vertices: v }
            })
            .collect()
    }

    /// Every non-empty subset of the vertex set, i.e. all faces including
    /// the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity((1 << n) - 1);
        for mask in 1u32..(1 << n) {
            let vertices: Vec<Vertex> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.vertices[i])
                .collect();
            out.push(Simplex { vertices });
        }
        out
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        other
            .vertices
            .iter()
            .all(|v| self.vertices.binary_search(v).is_ok())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A simplex together with an orientation class: `sign` is `+1` when the
/// orientation agrees with the ascending vertex order, `-1` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedSimplex {
    pub simplex: Simplex,
    pub sign: i8,
}

impl OrientedSimplex {
    /// Positively oriented representative (ascending vertex order).
    pub fn positive(simplex: Simplex) -> Self {
        Self { simplex, sign: 1 }
    }

    /// Interprets a vertex sequence as an oriented simplex: the orientation
    /// class is the parity of the permutation that sorts the sequence.
    pub fn from_sequence(vertices: impl Into<Vec<Vertex>>) -> Result<Self, SimplexError> {
        let raw = vertices.into();
        let sign = permutation_parity(&raw)?;
        let simplex = Simplex::new(raw)?;
        Ok(Self { simplex, sign })
    }

    pub fn opposite(&self) -> Self {
        Self {
            simplex: self.simplex.clone(),
            sign: -self.sign,
        }
    }
}

impl fmt::Display for OrientedSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", self.simplex)
    }
}

/// Parity of the permutation sorting `seq` ascending: `+1` for even, `-1`
/// for odd. Rejects duplicates.
pub fn permutation_parity(seq: &[Vertex]) -> Result<i8, SimplexError> {
    if seq.is_empty() {
        return Err(SimplexError::Empty);
    }
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return Err(SimplexError::DuplicateVertex(seq[i]));
            }
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

/// A formal integer combination of simplices. Orientations are folded into
/// the coefficients relative to the ascending-order representative.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<Simplex, i64>,
}

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &Simplex) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, s: Simplex, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    /// Applies the boundary operator to every term.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero();
        for (s, c) in self.terms() {
            let part = boundary_chain(&OrientedSimplex::positive(s.clone()));
            for (t, d) in part.terms() {
                out.add_term(t.clone(), c * d);
            }
        }
        out
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Boundary of an oriented simplex: the alternating sum of its facets,
/// `∂Δ(v_0..v_i) = Σ_j (-1)^j Δ(v_0..\hat v_j..v_i)`. Vertices map to the
/// empty chain.
pub fn boundary_chain(s: &OrientedSimplex) -> Chain {
    let mut out = Chain::zero();
    let sign = s.sign as i64;
    for (j, facet) in s.simplex.facets().into_iter().enumerate() {
        let coeff = if j % 2 == 0 { sign } else { -sign };
        out.add_term(facet, coeff);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sx(v: &[Vertex]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn simplex_rejects_empty_and_duplicates() {
        assert_eq!(Simplex::new(vec![]), Err(SimplexError::Empty));
        assert_eq!(
            Simplex::new(vec![1, 2, 1]),
            Err(SimplexError::DuplicateVertex(1))
        );
    }

    #[test]
    fn simplex_sorts_input() {
        assert_eq!(sx(&[3, 1, 2]).vertices(), &[1, 2, 3]);
        assert_eq!(sx(&[3, 1, 2]).dim(), 2);
    }

    #[test]
    fn orientation_tracks_permutation_parity() {
        let even = OrientedSimplex::from_sequence(vec![1, 2, 0]).unwrap();
        assert_eq!(even.sign, 1);
        let odd = OrientedSimplex::from_sequence(vec![1, 0, 2]).unwrap();
        assert_eq!(odd.sign, -1);
    }

    #[test]
    fn parity_exhaustive_s3_s4() {
        // every permutation of 3 and 4 labels: sign = parity of inversions
        fn check_all(labels: &[Vertex]) {
            let n = labels.len();
            let mut perm: Vec<usize> = (0..n).collect();
            // Heap's algorithm, tracking parity: each swap is a transposition
            fn heap(perm: &mut Vec<usize>, k: usize, labels: &[Vertex], parity: &mut i8) {
                if k <= 1 {
                    let seq: Vec<Vertex> = perm.iter().map(|&i| labels[i]).collect();
                    assert_eq!(permutation_parity(&seq).unwrap(), *parity);
                    return;
                }
                for i in 0..k - 1 {
                    heap(perm, k - 1, labels, parity);
                    if k % 2 == 0 {
                        perm.swap(i, k - 1);
                    } else {
                        perm.swap(0, k - 1);
                    }
                    *parity = -*parity;
                }
                heap(perm, k - 1, labels, parity);
            }
            let mut parity = 1i8;
            heap(&mut perm, n, labels, &mut parity);
        }
        check_all(&[0, 1, 2]);
        check_all(&[2, 5, 7, 11]);
    }

    #[test]
    fn boundary_of_triangle() {
        // ∂Δ(0,1,2) = Δ(1,2) − Δ(0,2) + Δ(0,1)
        let b = boundary_chain(&OrientedSimplex::positive(sx(&[0, 1, 2])));
        assert_eq!(b.coefficient(&sx(&[1, 2])), 1);
        assert_eq!(b.coefficient(&sx(&[0, 2])), -1);
        assert_eq!(b.coefficient(&sx(&[0, 1])), 1);
    }

    #[test]
    fn boundary_of_vertex_is_zero() {
        let b = boundary_chain(&OrientedSimplex::positive(sx(&[0])));
        assert!(b.is_zero());
    }

    #[test]
    fn boundary_squared_vanishes_up_to_dim_4() {
        // exhaustive over all simplices on labels 0..=5
        let labels: Vec<Vertex> = (0..6).collect();
        for mask in 1u32..(1 << 6) {
            let vs: Vec<Vertex> = labels
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            let s = OrientedSimplex::positive(sx(&vs));
            let bb = boundary_chain(&s).boundary();
            assert!(bb.is_zero(), "∂∂ ≠ 0 on {}", s.simplex);
        }
    }

    #[test]
    fn chain_display() {
        let mut c = Chain::zero();
        c.add_term(sx(&[1, 2]), 1);
        c.add_term(sx(&[0, 2]), -1);
        c.add_term(sx(&[0, 1]), 1);
        assert_eq!(c.to_string(), "{0,1} - {0,2} + {1,2}");
    }
}
