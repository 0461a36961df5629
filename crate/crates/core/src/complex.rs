//! Simplicial complexes: downward-closed families of simplices, with the
//! counting invariants and subdivision operators defined on them.

use std::collections::{BTreeMap, BTreeSet};

use crate::simplex::{Simplex, SimplexError};
use crate::{CVector, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("the empty complex is not accepted")]
    Empty,
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("not downward closed: {missing} is a face of {of} but absent")]
    NotClosed { missing: String, of: String },
}

/// A finite simplicial complex, stored graded by dimension. Every non-empty
/// subset of a member simplex is itself a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    grades: Vec<BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    /// The complex generated by a family of simplices: the smallest
    /// downward-closed family containing every generator.
    pub fn generate(generators: &[Vec<Vertex>]) -> Result<Self, ComplexError> {
        if generators.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut grades: Vec<BTreeSet<Simplex>> = Vec::new();
        for g in generators {
            let s = Simplex::new(g.clone())?;
            for face in s.faces() {
                let d = face.dim();
                if grades.len() <= d {
                    grades.resize_with(d + 1, BTreeSet::new);
                }
                grades[d].insert(face);
            }
        }
        Ok(Self { grades })
    }

    /// Builds a complex from an explicit list of simplices, verifying the
    /// downward-closure invariant instead of repairing it.
    pub fn from_simplices(simplices: &[Simplex]) -> Result<Self, ComplexError> {
        if simplices.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut grades: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            let d = s.dim();
            if grades.len() <= d {
                grades.resize_with(d + 1, BTreeSet::new);
            }
            grades[d].insert(s.clone());
        }
        let complex = Self { grades };
        for s in complex.simplices() {
            for f in s.facets() {
                if !complex.contains(&f) {
                    return Err(ComplexError::NotClosed {
                        missing: f.to_string(),
                        of: s.to_string(),
                    });
                }
            }
        }
        Ok(complex)
    }

    pub fn dim(&self) -> usize {
        self.grades.len() - 1
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.grades.get(s.dim()).is_some_and(|g| g.contains(s))
    }

    /// Simplices of one dimension, in ascending lexicographic order.
    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.grades.get(d).into_iter().flatten()
    }

    /// All simplices, graded by dimension then lexicographic.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.grades.iter().flatten()
    }

    pub fn vertex_labels(&self) -> Vec<Vertex> {
        self.simplices_of_dim(0)
            .map(|s| s.vertices()[0])
            .collect()
    }

    /// The maximal simplices (those that are not a proper face of another).
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        self.simplices()
            .filter(|s| {
                s.dim() == self.dim()
                    || !self
                        .simplices_of_dim(s.dim() + 1)
                        .any(|t| t.contains(s))
            })
            .collect()
    }

    /// Number of simplices in each dimension.
    pub fn c_vector(&self) -> CVector {
        self.grades.iter().map(|g| g.len()).collect()
    }

    /// Alternating sum of the cell counts, `Σ (-1)^i c_i`.
    pub fn euler_characteristic(&self) -> i64 {
        euler_from_counts(&self.c_vector())
    }

    /// The subcomplex of all simplices of dimension at most `n`. For
    /// `n >= dim` this is the complex itself.
    pub fn skeleton(&self, n: usize) -> SimplicialComplex {
        let take = (n + 1).min(self.grades.len());
        SimplicialComplex {
            grades: self.grades[..take].to_vec(),
        }
    }

    /// Cofacets of `s`: members having `s` as a codimension-1 face.
    pub fn cofacets(&self, s: &Simplex) -> Vec<&Simplex> {
        self.simplices_of_dim(s.dim() + 1)
            .filter(|t| t.contains(s))
            .collect()
    }

    /// Barycentric subdivision. Vertices of the result are the simplices of
    /// `self`; its simplices are the chains of proper face inclusions.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        self.barycentric_subdivision_with_map().0
    }

    /// Subdivision plus the labelling map: `map[s]` is the new vertex label
    /// standing for the old simplex `s`.
    pub fn barycentric_subdivision_with_map(
        &self,
    ) -> (SimplicialComplex, BTreeMap<Simplex, Vertex>) {
        let mut label: BTreeMap<Simplex, Vertex> = BTreeMap::new();
        let mut next: Vertex = 0;
        for s in self.simplices() {
            label.insert(s.clone(), next);
            next += 1;
        }
        // Maximal chains in the face poset are flags inside a maximal
        // simplex: one face per dimension 0..=dim, built by inserting the
        // vertices in some order.
        let mut generators: Vec<Vec<Vertex>> = Vec::new();
        for top in self.maximal_simplices() {
            let verts = top.vertices().to_vec();
            let mut perm: Vec<usize> = (0..verts.len()).collect();
            permute_all(&mut perm, &mut |order| {
                let mut flag = Vec::with_capacity(order.len());
                let mut acc: Vec<Vertex> = Vec::new();
                for &i in order {
                    acc.push(verts[i]);
                    let face = Simplex::new(acc.clone()).expect("faces are valid");
                    flag.push(label[&face]);
                }
                generators.push(flag);
            });
        }
        let subdivided = SimplicialComplex::generate(&generators).expect("non-empty");
        (subdivided, label)
    }

    /// Relabels every vertex through `map`; labels absent from the map are
    /// kept. The map must stay injective on the vertex set.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<Self, ComplexError> {
        let generators: Vec<Vec<Vertex>> = self
            .maximal_simplices()
            .into_iter()
            .map(|s| {
                s.vertices()
                    .iter()
                    .map(|v| map.get(v).copied().unwrap_or(*v))
                    .collect()
            })
            .collect();
        Self::generate(&generators)
    }

    /// True when the 1-skeleton connects every pair of vertices.
    pub fn is_connected(&self) -> bool {
        let vertices = self.vertex_labels();
        if vertices.is_empty() {
            return false;
        }
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut stack = vec![vertices[0]];
        seen.insert(vertices[0]);
        while let Some(v) = stack.pop() {
            for e in self.simplices_of_dim(1) {
                let vs = e.vertices();
                let other = if vs[0] == v {
                    vs[1]
                } else if vs[1] == v {
                    vs[0]
                } else {
                    continue;
                };
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        seen.len() == vertices.len()
    }
}

/// `Σ (-1)^i c_i` over a count vector.
pub fn euler_from_counts(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Calls `f` with every permutation of `items` (Heap's algorithm).
fn permute_all(items: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    fn heap(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k - 1 {
            heap(items, k - 1, f);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        heap(items, k - 1, f);
    }
    let n = items.len();
    heap(items, n, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_complex_counts() {
        // K = ⟨03, 04, 05, 24, 012⟩ has c(K) = {6, 7, 1}
        let k = SimplicialComplex::generate(&[
            vec![0, 3],
            vec![0, 4],
            vec![0, 5],
            vec![2, 4],
            vec![0, 1, 2],
        ])
        .unwrap();
        assert_eq!(k.c_vector(), vec![6, 7, 1]);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn full_triangle_closure() {
        let k = SimplicialComplex::generate(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.c_vector(), vec![3, 3, 1]);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn two_isolated_vertices() {
        let k = SimplicialComplex::generate(&[vec![0], vec![1]]).unwrap();
        assert_eq!(k.c_vector(), vec![2]);
    }

    #[test]
    fn empty_generator_family_rejected() {
        assert_eq!(
            SimplicialComplex::generate(&[]),
            Err(ComplexError::Empty)
        );
        assert!(matches!(
            SimplicialComplex::generate(&[vec![]]),
            Err(ComplexError::Simplex(SimplexError::Empty))
        ));
    }

    #[test]
    fn from_simplices_checks_closure() {
        let bad = [Simplex::new(vec![0, 1]).unwrap()];
        assert!(matches!(
            SimplicialComplex::from_simplices(&bad),
            Err(ComplexError::NotClosed { .. })
        ));
    }

    #[test]
    fn skeleton_of_triangle() {
        let k = SimplicialComplex::generate(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.skeleton(1).c_vector(), vec![3, 3]);
        assert_eq!(k.skeleton(0).c_vector(), vec![3]);
        assert_eq!(k.skeleton(2), k);
        assert_eq!(k.skeleton(7), k);
    }

    #[test]
    fn subdivision_of_edge() {
        let k = SimplicialComplex::generate(&[vec![0, 1]]).unwrap();
        let sub = k.barycentric_subdivision();
        assert_eq!(sub.c_vector(), vec![3, 2]);
    }

    #[test]
    fn subdivision_of_triangle() {
        let k = SimplicialComplex::generate(&[vec![0, 1, 2]]).unwrap();
        let sub = k.barycentric_subdivision();
        assert_eq!(sub.c_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn subdivision_preserves_euler_characteristic() {
        let k = SimplicialComplex::generate(&[
            vec![0, 3],
            vec![0, 4],
            vec![0, 5],
            vec![2, 4],
            vec![0, 1, 2],
        ])
        .unwrap();
        let sub = k.barycentric_subdivision();
        assert_eq!(sub.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn maximal_simplices_of_mixed_complex() {
        let k =
            SimplicialComplex::generate(&[vec![0, 1, 2], vec![2, 3]]).unwrap();
        let max: Vec<String> =
            k.maximal_simplices().iter().map(|s| s.to_string()).collect();
        assert_eq!(max, vec!["{2,3}", "{0,1,2}"]);
    }

    #[test]
    fn connectivity() {
        let k = SimplicialComplex::generate(&[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(k.is_connected());
        let split = SimplicialComplex::generate(&[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!split.is_connected());
    }
}
