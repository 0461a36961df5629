//! Regular CW complexes encoded combinatorially: each cell carries the ids
//! of the cells one dimension down that make up its boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::euler_from_counts;
use crate::simplex::Simplex;
use crate::surface::{classify_surface, SurfaceType};
use crate::{CVector, SimplicialComplex, Vertex};

pub type CellId = u32;

/// One cell of a regular CW complex. `boundary` lists the ids of the
/// `(dim-1)`-cells in its boundary; 0-cells have an empty boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: CellId,
    pub dim: usize,
    pub boundary: BTreeSet<CellId>,
}

/// Structural defects: the encoding itself is broken, as opposed to a
/// well-formed encoding that fails the regularity conditions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RccStructuralError {
    #[error("no cells")]
    Empty,
    #[error("cell id {0} appears more than once")]
    DuplicateId(CellId),
    #[error("cell {cell}: boundary id {missing} does not resolve")]
    DanglingBoundary { cell: CellId, missing: CellId },
    #[error("cell {cell} (dim {dim}): boundary cell {boundary} has dim {got}, expected {expected}")]
    BadGrading {
        cell: CellId,
        dim: usize,
        boundary: CellId,
        got: usize,
        expected: usize,
    },
    #[error("0-cell {0} has a non-empty boundary")]
    VertexWithBoundary(CellId),
}

/// A regularity violation found by [`RegularCWComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RccViolation {
    /// A 1-cell whose boundary is not two distinct 0-cells.
    EdgeEndpoints { cell: CellId, count: usize },
    /// A 2-cell whose boundary is not a single simple cycle of length >= 3.
    TwoCellBoundary { cell: CellId, reason: String },
    /// A 3-cell whose boundary is not an orientable surface with chi = 2.
    ThreeCellBoundary { cell: CellId, reason: String },
    /// Two cells whose closures intersect in something other than the
    /// closure of a single cell.
    ClosureIntersection { a: CellId, b: CellId },
}

impl fmt::Display for RccViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RccViolation::EdgeEndpoints { cell, count } => {
                write!(f, "1-cell {cell} has {count} distinct endpoints, expected 2")
            }
            RccViolation::TwoCellBoundary { cell, reason } => {
                write!(f, "2-cell {cell}: boundary is not a simple cycle ({reason})")
            }
            RccViolation::ThreeCellBoundary { cell, reason } => {
                write!(f, "3-cell {cell}: boundary is not a 2-sphere ({reason})")
            }
            RccViolation::ClosureIntersection { a, b } => {
                write!(
                    f,
                    "closures of cells {a} and {b} intersect in something that is not the closure of one cell"
                )
            }
        }
    }
}

/// Validation report: the regularity violations found, if any.
#[derive(Debug, Clone, Default)]
pub struct RccReport {
    pub violations: Vec<RccViolation>,
}

impl RccReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RccError {
    #[error(transparent)]
    Structural(#[from] RccStructuralError),
    #[error("complex fails regularity validation: {0}")]
    Invalid(String),
    #[error("2-cell shorthand needs at least 3 vertices, got {0}")]
    ShorthandTooShort(usize),
    #[error("2-cell shorthand repeats consecutive vertex {0}")]
    ShorthandRepeatedVertex(Vertex),
    #[error("2-cell shorthand repeats the edge {{{0},{1}}}")]
    ShorthandRepeatedEdge(Vertex, Vertex),
    #[error("id {0} is already used by a cell of a different kind")]
    IdClash(CellId),
}

/// A regular CW complex as an id-indexed, graded cell collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularCWComplex {
    cells: BTreeMap<CellId, Cell>,
    dim: usize,
}

impl RegularCWComplex {
    /// Assembles a complex from explicit cells, checking structural
    /// integrity (unique ids, resolving boundaries, correct grading).
    pub fn from_cells(cells: Vec<Cell>) -> Result<Self, RccStructuralError> {
        if cells.is_empty() {
            return Err(RccStructuralError::Empty);
        }
        let mut map: BTreeMap<CellId, Cell> = BTreeMap::new();
        for c in cells {
            if map.insert(c.id, c.clone()).is_some() {
                return Err(RccStructuralError::DuplicateId(c.id));
            }
        }
        let mut dim = 0;
        for cell in map.values() {
            dim = dim.max(cell.dim);
            if cell.dim == 0 && !cell.boundary.is_empty() {
                return Err(RccStructuralError::VertexWithBoundary(cell.id));
            }
            for &b in &cell.boundary {
                match map.get(&b) {
                    None => {
                        return Err(RccStructuralError::DanglingBoundary {
                            cell: cell.id,
                            missing: b,
                        })
                    }
                    Some(bc) if cell.dim == 0 || bc.dim != cell.dim - 1 => {
                        return Err(RccStructuralError::BadGrading {
                            cell: cell.id,
                            dim: cell.dim,
                            boundary: b,
                            got: bc.dim,
                            expected: cell.dim.saturating_sub(1),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(Self { cells: map, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cell(&self, id: CellId) -> Option<&Cell> {
        self.cells.get(&id)
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.values()
    }

    /// Cells of one dimension in ascending id order.
    pub fn cells_of_dim(&self, d: usize) -> impl Iterator<Item = &Cell> {
        self.cells.values().filter(move |c| c.dim == d)
    }

    pub fn c_vector(&self) -> CVector {
        let mut counts = vec![0usize; self.dim + 1];
        for c in self.cells.values() {
            counts[c.dim] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_from_counts(&self.c_vector())
    }

    /// The subcomplex of cells of dimension at most `n`.
    pub fn skeleton(&self, n: usize) -> RegularCWComplex {
        let cells: Vec<Cell> = self
            .cells
            .values()
            .filter(|c| c.dim <= n)
            .cloned()
            .collect();
        RegularCWComplex::from_cells(cells).expect("skeleton of a valid complex")
    }

    /// Closure of a cell: the cell plus everything reachable through
    /// iterated boundaries.
    pub fn closure(&self, id: CellId) -> BTreeSet<CellId> {
        let mut out = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            if out.insert(c) {
                if let Some(cell) = self.cells.get(&c) {
                    stack.extend(cell.boundary.iter().copied());
                }
            }
        }
        out
    }

    /// Ids of the cells having `id` in their boundary.
    pub fn cofacets(&self, id: CellId) -> Vec<CellId> {
        self.cells
            .values()
            .filter(|c| c.boundary.contains(&id))
            .map(|c| c.id)
            .collect()
    }

    /// The boundary vertex cycle of a 2-cell, in canonical traversal order:
    /// starting at the smallest vertex id, moving first toward its
    /// smaller-id neighbour. Fails when the boundary is not a single simple
    /// cycle of length at least 3.
    pub fn two_cell_vertex_cycle(&self, id: CellId) -> Result<Vec<CellId>, String> {
        let cell = self.cells.get(&id).ok_or("no such cell")?;
        if cell.dim != 2 {
            return Err(format!("cell {id} has dim {}, expected 2", cell.dim));
        }
        if cell.boundary.len() < 3 {
            return Err(format!("only {} boundary edges", cell.boundary.len()));
        }
        let mut adjacency: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
        for &e in &cell.boundary {
            let edge = &self.cells[&e];
            let endpoints: Vec<CellId> = edge.boundary.iter().copied().collect();
            if endpoints.len() != 2 {
                return Err(format!("boundary 1-cell {e} is not a proper edge"));
            }
            adjacency.entry(endpoints[0]).or_default().push(endpoints[1]);
            adjacency.entry(endpoints[1]).or_default().push(endpoints[0]);
        }
        for (v, nbrs) in &adjacency {
            if nbrs.len() != 2 {
                return Err(format!("vertex {v} meets {} boundary edges", nbrs.len()));
            }
        }
        if adjacency.len() != cell.boundary.len() {
            return Err("edge and vertex counts differ".into());
        }
        let start = *adjacency.keys().next().expect("non-empty");
        let mut nbrs = adjacency[&start].clone();
        nbrs.sort_unstable();
        let mut cycle = vec![start, nbrs[0]];
        loop {
            let cur = *cycle.last().unwrap();
            let prev = cycle[cycle.len() - 2];
            let next = adjacency[&cur]
                .iter()
                .copied()
                .find(|&n| n != prev)
                .ok_or("broken cycle")?;
            if next == start {
                break;
            }
            cycle.push(next);
            if cycle.len() > adjacency.len() {
                return Err("boundary is disconnected or not a single cycle".into());
            }
        }
        if cycle.len() != adjacency.len() {
            return Err("boundary has more than one cycle".into());
        }
        Ok(cycle)
    }

    /// Runs the regularity checks: 1-cell endpoints, 2-cell boundary
    /// cycles, 3-cell boundary spheres, and the closure-intersection
    /// condition. Cells of dimension above 3 are only covered by the
    /// grading (structural) and closure checks.
    pub fn validate(&self) -> RccReport {
        let mut violations = Vec::new();
        for cell in self.cells_of_dim(1) {
            if cell.boundary.len() != 2 {
                violations.push(RccViolation::EdgeEndpoints {
                    cell: cell.id,
                    count: cell.boundary.len(),
                });
            }
        }
        for cell in self.cells_of_dim(2) {
            if let Err(reason) = self.two_cell_vertex_cycle(cell.id) {
                violations.push(RccViolation::TwoCellBoundary {
                    cell: cell.id,
                    reason,
                });
            }
        }
        if violations.is_empty() {
            for cell in self.cells_of_dim(3) {
                if let Err(reason) = self.three_cell_boundary_sphere(cell.id) {
                    violations.push(RccViolation::ThreeCellBoundary {
                        cell: cell.id,
                        reason,
                    });
                }
            }
        }
        // closure-intersection condition, pairwise
        let ids: Vec<CellId> = self.cells.keys().copied().collect();
        let closures: BTreeMap<CellId, BTreeSet<CellId>> =
            ids.iter().map(|&i| (i, self.closure(i))).collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                if closures[&a].contains(&b) || closures[&b].contains(&a) {
                    continue;
                }
                let inter: BTreeSet<CellId> =
                    closures[&a].intersection(&closures[&b]).copied().collect();
                if inter.is_empty() {
                    continue;
                }
                let top = inter
                    .iter()
                    .max_by_key(|&&c| (self.cells[&c].dim, c))
                    .copied()
                    .unwrap();
                if closures[&top] != inter {
                    violations.push(RccViolation::ClosureIntersection { a, b });
                }
            }
        }
        RccReport { violations }
    }

    fn three_cell_boundary_sphere(&self, id: CellId) -> Result<(), String> {
        let cell = &self.cells[&id];
        let mut sub_ids: BTreeSet<CellId> = BTreeSet::new();
        for &f in &cell.boundary {
            sub_ids.extend(self.closure(f));
        }
        let sub_cells: Vec<Cell> = sub_ids.iter().map(|i| self.cells[i].clone()).collect();
        let sub = RegularCWComplex::from_cells(sub_cells)
            .map_err(|e| format!("boundary subcomplex broken: {e}"))?;
        let (tri, _) = sub.triangulate_unchecked();
        let surface =
            classify_surface(&tri).map_err(|e| format!("boundary not a surface: {e}"))?;
        let sphere = SurfaceType {
            orientable: true,
            genus_or_crosscaps: 0,
            boundary_components: 0,
        };
        if surface != sphere {
            return Err(format!("boundary classifies as {surface}"));
        }
        Ok(())
    }

    /// Cone triangulation: every cell of dimension >= 2 gets a fresh apex
    /// vertex and is replaced by the cone over its (already triangulated)
    /// boundary. Returns the simplicial complex and, per cell, the
    /// top-dimensional simplices subdividing it. Requires a complex that
    /// passes [`validate`](Self::validate).
    pub fn triangulate(
        &self,
    ) -> Result<(SimplicialComplex, BTreeMap<CellId, Vec<Simplex>>), RccError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(RccError::Invalid(report.violations[0].to_string()));
        }
        Ok(self.triangulate_unchecked())
    }

    fn triangulate_unchecked(&self) -> (SimplicialComplex, BTreeMap<CellId, Vec<Simplex>>) {
        // 0-cells keep their id order as vertex labels; apexes follow.
        let mut vertex_label: BTreeMap<CellId, Vertex> = BTreeMap::new();
        let mut next: Vertex = 0;
        for c in self.cells_of_dim(0) {
            vertex_label.insert(c.id, next);
            next += 1;
        }
        let mut apex_label: BTreeMap<CellId, Vertex> = BTreeMap::new();
        for d in 2..=self.dim {
            for c in self.cells_of_dim(d) {
                apex_label.insert(c.id, next);
                next += 1;
            }
        }
        // top simplices of each cell's subdivision, by induction on dim
        let mut tri: BTreeMap<CellId, Vec<Vec<Vertex>>> = BTreeMap::new();
        for d in 0..=self.dim {
            for c in self.cells_of_dim(d) {
                let simplices: Vec<Vec<Vertex>> = match d {
                    0 => vec![vec![vertex_label[&c.id]]],
                    1 => {
                        let vs: Vec<Vertex> =
                            c.boundary.iter().map(|b| vertex_label[b]).collect();
                        vec![vs]
                    }
                    _ => {
                        let apex = apex_label[&c.id];
                        let mut out = Vec::new();
                        for b in &c.boundary {
                            for s in &tri[b] {
                                let mut cone = s.clone();
                                cone.push(apex);
                                out.push(cone);
                            }
                        }
                        out
                    }
                };
                tri.insert(c.id, simplices);
            }
        }
        let generators: Vec<Vec<Vertex>> = tri.values().flatten().cloned().collect();
        let complex = SimplicialComplex::generate(&generators).expect("cells exist");
        let map = tri
            .into_iter()
            .map(|(id, tops)| {
                let simplices = tops
                    .into_iter()
                    .map(|v| Simplex::new(v).expect("valid simplex"))
                    .collect();
                (id, simplices)
            })
            .collect();
        (complex, map)
    }
}

/// Incremental constructor for regular CW complexes, including the
/// `[v_1, ..., v_k]` shorthand that creates a 2-cell along with any missing
/// vertices and edges.
#[derive(Debug, Default, Clone)]
pub struct RccBuilder {
    cells: BTreeMap<CellId, Cell>,
    edges: BTreeMap<(CellId, CellId), CellId>,
}

impl RccBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh_id(&self) -> CellId {
        self.cells.keys().next_back().map_or(0, |m| m + 1)
    }

    /// Adds an explicit cell. Ids must be unique.
    pub fn add_cell(
        &mut self,
        id: CellId,
        dim: usize,
        boundary: impl IntoIterator<Item = CellId>,
    ) -> Result<&mut Self, RccError> {
        if self.cells.contains_key(&id) {
            return Err(RccStructuralError::DuplicateId(id).into());
        }
        let cell = Cell {
            id,
            dim,
            boundary: boundary.into_iter().collect(),
        };
        if dim == 1 {
            let e: Vec<CellId> = cell.boundary.iter().copied().collect();
            if e.len() == 2 {
                self.edges.insert((e[0], e[1]), id);
            }
        }
        self.cells.insert(id, cell);
        Ok(self)
    }

    /// Ensures a 0-cell with the given id exists.
    pub fn vertex(&mut self, id: CellId) -> Result<CellId, RccError> {
        match self.cells.get(&id) {
            Some(c) if c.dim == 0 => Ok(id),
            Some(_) => Err(RccError::IdClash(id)),
            None => {
                self.cells.insert(
                    id,
                    Cell {
                        id,
                        dim: 0,
                        boundary: BTreeSet::new(),
                    },
                );
                Ok(id)
            }
        }
    }

    /// Ensures an edge between two existing 0-cells, creating it with a
    /// fresh id when absent.
    pub fn edge(&mut self, a: CellId, b: CellId) -> Result<CellId, RccError> {
        let key = (a.min(b), a.max(b));
        if let Some(&id) = self.edges.get(&key) {
            return Ok(id);
        }
        self.vertex(a)?;
        self.vertex(b)?;
        let id = self.fresh_id();
        self.cells.insert(
            id,
            Cell {
                id,
                dim: 1,
                boundary: [a, b].into_iter().collect(),
            },
        );
        self.edges.insert(key, id);
        Ok(id)
    }

    /// The `[v_1, v_2, ..., v_k]` shorthand: adds a 2-cell whose boundary
    /// is the edge cycle `{v_1,v_2}, ..., {v_k,v_1}`, reusing existing
    /// vertices and edges and creating missing ones. Returns the new
    /// 2-cell's id.
    pub fn two_cell(&mut self, cycle: &[Vertex]) -> Result<CellId, RccError> {
        if cycle.len() < 3 {
            return Err(RccError::ShorthandTooShort(cycle.len()));
        }
        let mut seen_edges = BTreeSet::new();
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            if a == b {
                return Err(RccError::ShorthandRepeatedVertex(a));
            }
            if !seen_edges.insert((a.min(b), a.max(b))) {
                return Err(RccError::ShorthandRepeatedEdge(a.min(b), a.max(b)));
            }
        }
        // register the vertices before allocating edge ids, so labels do
        // not collide with freshly created cells
        for &v in cycle {
            self.vertex(v)?;
        }
        let mut boundary = BTreeSet::new();
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            boundary.insert(self.edge(a, b)?);
        }
        let id = self.fresh_id();
        self.cells.insert(
            id,
            Cell {
                id,
                dim: 2,
                boundary,
            },
        );
        Ok(id)
    }

    pub fn finish(self) -> Result<RegularCWComplex, RccStructuralError> {
        RegularCWComplex::from_cells(self.cells.into_values().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The nine-quad decomposition of the 2-torus.
    pub(crate) fn torus_rcc() -> RegularCWComplex {
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

    #[test]
    fn torus_counts() {
        let t = torus_rcc();
        assert_eq!(t.c_vector(), vec![9, 18, 9]);
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn shorthand_rejects_degenerate_input() {
        let mut b = RccBuilder::new();
        assert!(matches!(
            b.two_cell(&[0, 1]),
            Err(RccError::ShorthandTooShort(2))
        ));
        assert!(matches!(
            b.two_cell(&[0, 0, 1]),
            Err(RccError::ShorthandRepeatedVertex(0))
        ));
        assert!(matches!(
            b.two_cell(&[0, 1, 0, 2]),
            Err(RccError::ShorthandRepeatedEdge(0, 1))
        ));
    }

    #[test]
    fn single_quad() {
        let mut b = RccBuilder::new();
        let id = b.two_cell(&[0, 1, 7, 4]).unwrap();
        let x = b.finish().unwrap();
        assert_eq!(x.cell(id).unwrap().boundary.len(), 4);
        assert_eq!(x.c_vector(), vec![4, 4, 1]);
    }

    #[test]
    fn loop_edge_is_flagged() {
        let mut b = RccBuilder::new();
        b.vertex(0).unwrap();
        b.add_cell(1, 1, [0]).unwrap();
        let x = b.finish().unwrap();
        let report = x.validate();
        assert!(!report.is_valid());
        assert!(matches!(
            report.violations[0],
            RccViolation::EdgeEndpoints { cell: 1, count: 1 }
        ));
    }

    #[test]
    fn dangling_boundary_is_structural() {
        let cells = vec![Cell {
            id: 0,
            dim: 1,
            boundary: [5, 6].into_iter().collect(),
        }];
        assert!(matches!(
            RegularCWComplex::from_cells(cells),
            Err(RccStructuralError::DanglingBoundary { cell: 0, missing: 5 })
        ));
    }

    #[test]
    fn triangulated_quad_torus_has_chi_zero() {
        let t = torus_rcc();
        let (tri, map) = t.triangulate().unwrap();
        assert_eq!(tri.euler_characteristic(), 0);
        // each quad splits into 4 cone triangles
        for c in t.cells_of_dim(2) {
            assert_eq!(map[&c.id].len(), 4);
        }
        assert_eq!(tri.c_vector(), vec![18, 54, 36]);
    }

    #[test]
    fn triangulated_triangle_cell() {
        let mut b = RccBuilder::new();
        b.two_cell(&[0, 1, 2]).unwrap();
        let x = b.finish().unwrap();
        let (tri, _) = x.triangulate().unwrap();
        assert_eq!(tri.c_vector(), vec![4, 6, 3]);
        assert_eq!(tri.euler_characteristic(), 1);
    }

    #[test]
    fn zero_dimensional_triangulation() {
        let mut b = RccBuilder::new();
        b.vertex(3).unwrap();
        b.vertex(8).unwrap();
        let x = b.finish().unwrap();
        let (tri, _) = x.triangulate().unwrap();
        assert_eq!(tri.c_vector(), vec![2]);
    }

    #[test]
    fn skeleton_drops_top_cells() {
        let t = torus_rcc();
        assert_eq!(t.skeleton(1).c_vector(), vec![9, 18]);
        assert_eq!(t.skeleton(5), t);
    }
}
