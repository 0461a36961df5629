//! Classification of triangulated compact surfaces: orientability, genus or
//! crosscap count, and boundary components, solved from the Euler
//! characteristic after combinatorial manifold checks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::simplex::Simplex;
use crate::{SimplicialComplex, Vertex};

/// The topological type of a compact surface. For orientable surfaces
/// `genus_or_crosscaps` is the genus g with `chi = 2 - 2g - b`; for
/// non-orientable ones it is the crosscap count k >= 1 with
/// `chi = 2 - k - b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceType {
    pub orientable: bool,
    pub genus_or_crosscaps: usize,
    pub boundary_components: usize,
}

impl SurfaceType {
    pub fn euler_characteristic(&self) -> i64 {
        let b = self.boundary_components as i64;
        let g = self.genus_or_crosscaps as i64;
        if self.orientable {
            2 - 2 * g - b
        } else {
            2 - g - b
        }
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orientable {
            write!(f, "orientable, genus {}", self.genus_or_crosscaps)?;
        } else {
            write!(f, "non-orientable, {} crosscap(s)", self.genus_or_crosscaps)?;
        }
        write!(f, ", {} boundary component(s)", self.boundary_components)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("complex has dimension {0}, expected 2")]
    NotTwoDimensional(usize),
    #[error("{0} is not contained in any triangle")]
    NotPure(String),
    #[error("edge {0} lies in {1} triangles")]
    EdgeInTooManyTriangles(String, usize),
    #[error("vertex {0}: link is not a single cycle or arc ({1})")]
    BadVertexLink(Vertex, String),
    #[error("surface is disconnected")]
    Disconnected,
}

/// Classifies a triangulated compact surface, rejecting non-surfaces with
/// the offending cell. Only connected, purely 2-dimensional simplicial
/// input is accepted; regular CW surfaces go through triangulation first.
pub fn classify_surface(k: &SimplicialComplex) -> Result<SurfaceType, SurfaceError> {
    if k.dim() != 2 {
        return Err(SurfaceError::NotTwoDimensional(k.dim()));
    }
    let triangles: Vec<&Simplex> = k.simplices_of_dim(2).collect();

    // purity: every vertex and edge lies in a triangle
    for e in k.simplices_of_dim(1) {
        if !triangles.iter().any(|t| t.contains(e)) {
            return Err(SurfaceError::NotPure(e.to_string()));
        }
    }
    for v in k.simplices_of_dim(0) {
        if !k.simplices_of_dim(1).any(|e| e.contains(v)) {
            return Err(SurfaceError::NotPure(v.to_string()));
        }
    }

    // every edge in one (boundary) or two (interior) triangles
    let mut edge_tris: BTreeMap<&Simplex, Vec<usize>> = BTreeMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for e in k.simplices_of_dim(1) {
            if t.contains(e) {
                edge_tris.entry(e).or_default().push(i);
            }
        }
    }
    for (e, ts) in &edge_tris {
        if ts.len() > 2 {
            return Err(SurfaceError::EdgeInTooManyTriangles(
                e.to_string(),
                ts.len(),
            ));
        }
    }

    // vertex links: a single cycle (interior vertex) or a single arc
    // (boundary vertex)
    for v in k.vertex_labels() {
        check_vertex_link(k, v)?;
    }

    if !k.is_connected() {
        return Err(SurfaceError::Disconnected);
    }

    // boundary components: cycles of edges lying in exactly one triangle
    let boundary_edges: Vec<&Simplex> = edge_tris
        .iter()
        .filter(|(_, ts)| ts.len() == 1)
        .map(|(e, _)| *e)
        .collect();
    let boundary_components = count_edge_cycles(&boundary_edges);

    // orientability: propagate a coherent orientation across interior edges
    let orientable = orientation_propagates(&triangles, &edge_tris);

    let chi = k.euler_characteristic();
    let b = boundary_components as i64;
    let genus_or_crosscaps = if orientable {
        // chi = 2 - 2g - b
        let twice_genus = 2 - b - chi;
        debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
        (twice_genus / 2) as usize
    } else {
        // chi = 2 - k - b
        let crosscaps = 2 - b - chi;
        debug_assert!(crosscaps >= 1);
        crosscaps as usize
    };
    Ok(SurfaceType {
        orientable,
        genus_or_crosscaps,
        boundary_components,
    })
}

fn check_vertex_link(k: &SimplicialComplex, v: Vertex) -> Result<(), SurfaceError> {
    // link vertices: u with {v,u} an edge; link edges: {u,w} for each
    // triangle {v,u,w}
    let mut degree: BTreeMap<Vertex, usize> = BTreeMap::new();
    for e in k.simplices_of_dim(1) {
        let vs = e.vertices();
        if vs.contains(&v) {
            let other = if vs[0] == v { vs[1] } else { vs[0] };
            degree.insert(other, 0);
        }
    }
    let mut link_edges: Vec<(Vertex, Vertex)> = Vec::new();
    for t in k.simplices_of_dim(2) {
        let vs = t.vertices();
        if vs.contains(&v) {
            let rest: Vec<Vertex> = vs.iter().copied().filter(|&u| u != v).collect();
            link_edges.push((rest[0], rest[1]));
            *degree.get_mut(&rest[0]).expect("closure") += 1;
            *degree.get_mut(&rest[1]).expect("closure") += 1;
        }
    }
    let mut odd = 0usize;
    for (&u, &d) in &degree {
        match d {
            0 => {
                return Err(SurfaceError::BadVertexLink(
                    v,
                    format!("link vertex {u} is isolated"),
                ))
            }
            1 => odd += 1,
            2 => {}
            _ => {
                return Err(SurfaceError::BadVertexLink(
                    v,
                    format!("link vertex {u} has degree {d}"),
                ))
            }
        }
    }
    if odd != 0 && odd != 2 {
        return Err(SurfaceError::BadVertexLink(
            v,
            format!("{odd} arc endpoints"),
        ));
    }
    // connectivity of the link graph
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    if let Some((&first, _)) = degree.iter().next() {
        let mut queue = VecDeque::from([first]);
        seen.insert(first);
        while let Some(u) = queue.pop_front() {
            for &(a, b) in &link_edges {
                let next = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    if seen.len() != degree.len() {
        return Err(SurfaceError::BadVertexLink(v, "link is disconnected".into()));
    }
    Ok(())
}

fn count_edge_cycles(edges: &[&Simplex]) -> usize {
    let mut adjacency: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for &v in e.vertices() {
            adjacency.entry(v).or_default().push(i);
        }
    }
    let mut seen = vec![false; edges.len()];
    let mut components = 0usize;
    for start in 0..edges.len() {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for &v in edges[i].vertices() {
                for &j in &adjacency[&v] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    components
}

fn orientation_propagates(
    triangles: &[&Simplex],
    edge_tris: &BTreeMap<&Simplex, Vec<usize>>,
) -> bool {
    // sign of edge e inside triangle t: the coefficient of e in ∂t
    fn incidence(t: &Simplex, e: &Simplex) -> i8 {
        for (j, f) in t.facets().into_iter().enumerate() {
            if &f == e {
                return if j % 2 == 0 { 1 } else { -1 };
            }
        }
        0
    }
    let mut orient: Vec<i8> = vec![0; triangles.len()];
    for root in 0..triangles.len() {
        if orient[root] != 0 {
            continue;
        }
        orient[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for (e, ts) in edge_tris {
                if ts.len() != 2 || !ts.contains(&i) {
                    continue;
                }
                let j = if ts[0] == i { ts[1] } else { ts[0] };
                let need =
                    -orient[i] * incidence(triangles[i], e) * incidence(triangles[j], e);
                if orient[j] == 0 {
                    orient[j] = need;
                    queue.push_back(j);
                } else if orient[j] != need {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(gens: &[&[Vertex]]) -> SimplicialComplex {
        let v: Vec<Vec<Vertex>> = gens.iter().map(|g| g.to_vec()).collect();
        SimplicialComplex::generate(&v).unwrap()
    }

    /// Boundary of the 3-simplex: the minimal sphere.
    fn sphere() -> SimplicialComplex {
        complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    /// The classic five-triangle Möbius band.
    pub(crate) fn mobius() -> SimplicialComplex {
        complex(&[
            &[0, 1, 2],
            &[1, 2, 3],
            &[2, 3, 4],
            &[0, 3, 4],
            &[0, 1, 4],
        ])
    }

    #[test]
    fn sphere_classifies() {
        let s = classify_surface(&sphere()).unwrap();
        assert_eq!(
            s,
            SurfaceType {
                orientable: true,
                genus_or_crosscaps: 0,
                boundary_components: 0
            }
        );
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn mobius_classifies() {
        let s = classify_surface(&mobius()).unwrap();
        assert_eq!(
            s,
            SurfaceType {
                orientable: false,
                genus_or_crosscaps: 1,
                boundary_components: 1
            }
        );
    }

    #[test]
    fn disk_has_one_boundary_component() {
        let s = classify_surface(&complex(&[&[0, 1, 2]])).unwrap();
        assert_eq!(
            s,
            SurfaceType {
                orientable: true,
                genus_or_crosscaps: 0,
                boundary_components: 1
            }
        );
    }

    #[test]
    fn three_triangles_on_one_edge_rejected() {
        let bad = complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        assert_eq!(
            classify_surface(&bad),
            Err(SurfaceError::EdgeInTooManyTriangles("{0,1}".into(), 3))
        );
    }

    #[test]
    fn pinched_vertex_rejected() {
        // two triangles sharing only a vertex: the link of 0 is disconnected
        let bad = complex(&[&[0, 1, 2], &[0, 3, 4]]);
        assert!(matches!(
            classify_surface(&bad),
            Err(SurfaceError::BadVertexLink(0, _))
        ));
    }

    #[test]
    fn circle_is_not_two_dimensional() {
        let circle = complex(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(
            classify_surface(&circle),
            Err(SurfaceError::NotTwoDimensional(1))
        );
    }

    #[test]
    fn two_spheres_rejected() {
        let two = complex(&[
            &[0, 1, 2],
            &[0, 1, 3],
            &[0, 2, 3],
            &[1, 2, 3],
            &[4, 5, 6],
            &[4, 5, 7],
            &[4, 6, 7],
            &[5, 6, 7],
        ]);
        assert_eq!(classify_surface(&two), Err(SurfaceError::Disconnected));
    }

    #[test]
    fn classification_survives_subdivision() {
        let m = mobius();
        let sub = m.barycentric_subdivision();
        assert_eq!(classify_surface(&m), classify_surface(&sub));
    }
}
