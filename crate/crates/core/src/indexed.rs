//! A flat, id-indexed view of a complex: cells numbered consecutively and
//! grouped by dimension, each with its signed codimension-1 incidences.
//! This is the common substrate for boundary matrices and discrete Morse
//! theory, and it is how regular CW complexes get usable incidence signs
//! (derived combinatorially for cells of dimension up to 3).

use std::collections::{BTreeMap, VecDeque};

use crate::cw::CellId;
use crate::{RegularCWComplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndexError {
    #[error("complex fails regularity validation: {0}")]
    InvalidRcc(String),
    #[error("incidence signs are only derived for cells of dimension <= 3, found dimension {0}")]
    UnsupportedDimension(usize),
    #[error("cell {0}: {1}")]
    BadCell(CellId, String),
}

/// Cells flattened to ids `0..len`, ordered by dimension and then by the
/// source complex's canonical order (lexicographic vertex order for
/// simplicial complexes, ascending cell id for regular CW complexes).
#[derive(Debug, Clone)]
pub struct IndexedComplex {
    offsets: Vec<usize>,
    labels: Vec<String>,
    file_ids: Vec<u64>,
    facets: Vec<Vec<(usize, i8)>>,
    cofacets: Vec<Vec<(usize, i8)>>,
}

impl IndexedComplex {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn top_dim(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn dim_of(&self, id: usize) -> usize {
        self.offsets.partition_point(|&o| o <= id) - 1
    }

    /// Flat ids of the cells of one dimension.
    pub fn cells_of_dim(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.offsets.len() {
            return 0..0;
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.cells_of_dim(d).len()
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    /// The id used for this cell in text files and reports.
    pub fn file_id(&self, id: usize) -> u64 {
        self.file_ids[id]
    }

    pub fn by_file_id(&self, fid: u64) -> Option<usize> {
        self.file_ids.iter().position(|&f| f == fid)
    }

    /// Codimension-1 faces with incidence signs.
    pub fn facets(&self, id: usize) -> &[(usize, i8)] {
        &self.facets[id]
    }

    pub fn cofacets(&self, id: usize) -> &[(usize, i8)] {
        &self.cofacets[id]
    }

    /// The coefficient of `sigma` in the boundary of `tau` (0 when `sigma`
    /// is not a facet of `tau`).
    pub fn incidence(&self, tau: usize, sigma: usize) -> i8 {
        self.facets[tau]
            .iter()
            .find(|(f, _)| *f == sigma)
            .map_or(0, |(_, s)| *s)
    }

    fn finish(
        offsets: Vec<usize>,
        labels: Vec<String>,
        file_ids: Vec<u64>,
        facets: Vec<Vec<(usize, i8)>>,
    ) -> Self {
        let mut cofacets: Vec<Vec<(usize, i8)>> = vec![Vec::new(); labels.len()];
        for (tau, fs) in facets.iter().enumerate() {
            for &(sigma, sign) in fs {
                cofacets[sigma].push((tau, sign));
            }
        }
        Self {
            offsets,
            labels,
            file_ids,
            facets,
            cofacets,
        }
    }

    /// Indexes a simplicial complex. Facet signs follow the alternating
    /// boundary formula on ascending vertex order.
    pub fn from_simplicial(k: &SimplicialComplex) -> Self {
        let mut ids: BTreeMap<&crate::Simplex, usize> = BTreeMap::new();
        let mut labels = Vec::new();
        let mut offsets = vec![0usize];
        for d in 0..=k.dim() {
            for s in k.simplices_of_dim(d) {
                ids.insert(s, labels.len());
                labels.push(s.to_string());
            }
            offsets.push(labels.len());
        }
        let mut facets: Vec<Vec<(usize, i8)>> = vec![Vec::new(); labels.len()];
        for d in 1..=k.dim() {
            for s in k.simplices_of_dim(d) {
                let id = ids[s];
                for (j, f) in s.facets().into_iter().enumerate() {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    facets[id].push((ids[&f], sign));
                }
            }
        }
        let file_ids = (0..labels.len() as u64).collect();
        Self::finish(offsets, labels, file_ids, facets)
    }

    /// Indexes a regular CW complex, deriving incidence signs: edges are
    /// oriented from their smaller to their larger endpoint id, 2-cells by
    /// the canonical traversal of their boundary cycle, and 3-cells by a
    /// coherent orientation of their boundary sphere. The complex must pass
    /// validation; dimensions above 3 are not supported.
    pub fn from_rcc(x: &RegularCWComplex) -> Result<Self, IndexError> {
        if x.dim() > 3 {
            return Err(IndexError::UnsupportedDimension(x.dim()));
        }
        let report = x.validate();
        if !report.is_valid() {
            return Err(IndexError::InvalidRcc(report.violations[0].to_string()));
        }

        let mut flat: BTreeMap<CellId, usize> = BTreeMap::new();
        let mut labels = Vec::new();
        let mut file_ids = Vec::new();
        let mut offsets = vec![0usize];
        for d in 0..=x.dim() {
            for c in x.cells_of_dim(d) {
                flat.insert(c.id, labels.len());
                labels.push(format!("#{}", c.id));
                file_ids.push(c.id as u64);
            }
            offsets.push(labels.len());
        }

        let mut facets: Vec<Vec<(usize, i8)>> = vec![Vec::new(); labels.len()];

        // 1-cells: min endpoint gets -1, max endpoint +1
        for c in x.cells_of_dim(1) {
            let ends: Vec<CellId> = c.boundary.iter().copied().collect();
            facets[flat[&c.id]] = vec![(flat[&ends[0]], -1), (flat[&ends[1]], 1)];
        }

        // 2-cells: walk the canonical boundary cycle; an edge traversed
        // from its smaller to its larger endpoint id enters positively
        for c in x.cells_of_dim(2) {
            let cycle = x
                .two_cell_vertex_cycle(c.id)
                .map_err(|e| IndexError::BadCell(c.id, e))?;
            let edge_of: BTreeMap<(CellId, CellId), CellId> = c
                .boundary
                .iter()
                .map(|&e| {
                    let ends: Vec<CellId> = x.cell(e).unwrap().boundary.iter().copied().collect();
                    ((ends[0], ends[1]), e)
                })
                .collect();
            let mut fs = Vec::with_capacity(cycle.len());
            for i in 0..cycle.len() {
                let u = cycle[i];
                let w = cycle[(i + 1) % cycle.len()];
                let key = (u.min(w), u.max(w));
                let e = edge_of[&key];
                let sign = if u < w { 1 } else { -1 };
                fs.push((flat[&e], sign));
            }
            fs.sort_unstable();
            facets[flat[&c.id]] = fs;
        }

        // 3-cells: orient the boundary sphere coherently, starting from the
        // smallest face id; the face coefficients are those orientations
        for c in x.cells_of_dim(3) {
            let faces: Vec<CellId> = c.boundary.iter().copied().collect();
            // edge id -> the (at most two) faces of this cell containing it
            let mut edge_faces: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
            for &f in &faces {
                for &e in &x.cell(f).unwrap().boundary {
                    edge_faces.entry(e).or_default().push(f);
                }
            }
            for (e, fs) in &edge_faces {
                if fs.len() != 2 {
                    return Err(IndexError::BadCell(
                        c.id,
                        format!("edge {e} lies in {} boundary faces", fs.len()),
                    ));
                }
            }
            let mut eps: BTreeMap<CellId, i8> = BTreeMap::new();
            eps.insert(faces[0], 1);
            let mut queue = VecDeque::from([faces[0]]);
            while let Some(f) = queue.pop_front() {
                for &e in &x.cell(f).unwrap().boundary {
                    let pair = &edge_faces[&e];
                    let g = if pair[0] == f { pair[1] } else { pair[0] };
                    let sf = facets[flat[&f]]
                        .iter()
                        .find(|(i, _)| *i == flat[&e])
                        .map(|(_, s)| *s)
                        .expect("edge is a facet of its face");
                    let sg = facets[flat[&g]]
                        .iter()
                        .find(|(i, _)| *i == flat[&e])
                        .map(|(_, s)| *s)
                        .expect("edge is a facet of its face");
                    let need = -eps[&f] * sf * sg;
                    match eps.get(&g) {
                        None => {
                            eps.insert(g, need);
                            queue.push_back(g);
                        }
                        Some(&have) if have != need => {
                            return Err(IndexError::BadCell(
                                c.id,
                                "boundary sphere is not orientable".into(),
                            ));
                        }
                        _ => {}
                    }
                }
            }
            if eps.len() != faces.len() {
                return Err(IndexError::BadCell(
                    c.id,
                    "boundary sphere is disconnected".into(),
                ));
            }
            facets[flat[&c.id]] = faces.iter().map(|f| (flat[f], eps[f])).collect();
        }

        Ok(Self::finish(offsets, labels, file_ids, facets))
    }

    /// Checks that consecutive incidences cancel: for every cell the signed
    /// sum over length-2 descents is zero. This is the ∂∂ = 0 condition on
    /// the level of single cells.
    pub fn boundary_squares_to_zero(&self) -> bool {
        for id in 0..self.len() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(f, s1) in self.facets(id) {
                for &(g, s2) in self.facets(f) {
                    *acc.entry(g).or_insert(0) += (s1 as i64) * (s2 as i64);
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::RccBuilder;

    fn torus_rcc() -> RegularCWComplex {
        let mut b = RccBuilder::new();
        for v in 0..9 {
            b.vertex(v).unwrap();
        }
        for quad in [
            [0, 1, 7, 4],
            [1, 2, 8, 7],
            [2, 0, 4, 8],
            [3, 4, 7, 5],
            [5, 7, 8, 6],
            [3, 6, 8, 4],
            [0, 3, 5, 1],
            [1, 5, 6, 2],
            [0, 2, 6, 3],
        ] {
            b.two_cell(&quad).unwrap();
        }
        b.finish().unwrap()
    }

    /// A solid cube: one 3-cell over six squares.
    fn cube_rcc() -> RegularCWComplex {
        let mut b = RccBuilder::new();
        for v in 0..8 {
            b.vertex(v).unwrap();
        }
        let faces: Vec<CellId> = [
            [0, 1, 3, 2],
            [4, 5, 7, 6],
            [0, 1, 5, 4],
            [2, 3, 7, 6],
            [0, 2, 6, 4],
            [1, 3, 7, 5],
        ]
        .iter()
        .map(|q| b.two_cell(q).unwrap())
        .collect();
        let top = faces.iter().max().unwrap() + 1;
        b.add_cell(top, 3, faces).unwrap();
        b.finish().unwrap()
    }

    #[test]
    fn simplicial_triangle_incidences() {
        let k = SimplicialComplex::generate(&[vec![0, 1, 2]]).unwrap();
        let ix = IndexedComplex::from_simplicial(&k);
        assert_eq!(ix.len(), 7);
        assert_eq!(ix.top_dim(), 2);
        let t = ix.cells_of_dim(2).next().unwrap();
        assert_eq!(ix.label(t), "{0,1,2}");
        // ∂{0,1,2} = {1,2} − {0,2} + {0,1}
        let mut signs: Vec<(&str, i8)> = ix
            .facets(t)
            .iter()
            .map(|&(f, s)| (ix.label(f), s))
            .collect();
        signs.sort();
        assert_eq!(signs, vec![("{0,1}", 1), ("{0,2}", -1), ("{1,2}", 1)]);
        assert!(ix.boundary_squares_to_zero());
    }

    #[test]
    fn torus_rcc_signs_square_to_zero() {
        let ix = IndexedComplex::from_rcc(&torus_rcc()).unwrap();
        assert_eq!(ix.len(), 36);
        assert!(ix.boundary_squares_to_zero());
        for c in ix.cells_of_dim(2) {
            assert_eq!(ix.facets(c).len(), 4);
        }
    }

    #[test]
    fn cube_rcc_signs_square_to_zero() {
        let ix = IndexedComplex::from_rcc(&cube_rcc()).unwrap();
        assert!(ix.boundary_squares_to_zero());
        let top = ix.cells_of_dim(3).next().unwrap();
        assert_eq!(ix.facets(top).len(), 6);
    }

    #[test]
    fn dim_lookup() {
        let ix = IndexedComplex::from_rcc(&torus_rcc()).unwrap();
        assert_eq!(ix.dim_of(0), 0);
        assert_eq!(ix.dim_of(8), 0);
        assert_eq!(ix.dim_of(9), 1);
        assert_eq!(ix.dim_of(26), 1);
        assert_eq!(ix.dim_of(27), 2);
        assert_eq!(ix.dim_of(35), 2);
    }

    #[test]
    fn invalid_rcc_is_rejected() {
        let mut b = RccBuilder::new();
        b.vertex(0).unwrap();
        b.add_cell(1, 1, [0]).unwrap();
        let x = b.finish().unwrap();
        assert!(matches!(
            IndexedComplex::from_rcc(&x),
            Err(IndexError::InvalidRcc(_))
        ));
    }
}
