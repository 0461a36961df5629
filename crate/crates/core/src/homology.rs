//! Homology groups of integer chain complexes via Smith normal form.

use std::fmt;

use num_bigint::BigInt;

use crate::chain::{ChainComplex, ChainError};
use crate::snf::smith_normal_form;

/// A finitely generated abelian group `Z^betti ⊕ Z/d_1 ⊕ Z/d_2 ⊕ ...` with
/// the torsion coefficients in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        Self {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology of a chain complex: `betti_i = rank C_i - rank ∂_i -
/// rank ∂_{i+1}`, torsion from the invariant factors of `∂_{i+1}`. The
/// complex is verified first; a nonzero `∂∂` is rejected.
pub fn homology_groups(c: &ChainComplex) -> Result<Vec<HomologyGroup>, ChainError> {
    c.verify()?;
    let top = c.dim();
    let snfs: Vec<_> = (1..=top)
        .map(|i| smith_normal_form(c.boundary(i).expect("in range")))
        .collect();
    let rank_of = |i: usize| -> usize {
        if i == 0 || i > top {
            0
        } else {
            snfs[i - 1].rank
        }
    };
    let mut out = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let betti = c.rank(i) - rank_of(i) - rank_of(i + 1);
        let torsion = if i < top {
            snfs[i].torsion()
        } else {
            Vec::new()
        };
        out.push(HomologyGroup { betti, torsion });
    }
    Ok(out)
}

/// `Σ (-1)^i betti_i`; by the Euler–Poincaré identity this equals the
/// Euler characteristic of the underlying complex.
pub fn euler_from_homology(groups: &[HomologyGroup]) -> i64 {
    groups
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let b = g.betti as i64;
            if i % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum()
}

/// One `H_i = ...` line per dimension.
pub fn homology_report(groups: &[HomologyGroup]) -> Vec<String> {
    groups
        .iter()
        .enumerate()
        .map(|(i, g)| format!("H_{i} = {g}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::chain_complex_from_simplicial;
    use crate::SimplicialComplex;

    fn groups_of(gens: &[&[u32]]) -> Vec<HomologyGroup> {
        let v: Vec<Vec<u32>> = gens.iter().map(|g| g.to_vec()).collect();
        let k = SimplicialComplex::generate(&v).unwrap();
        homology_groups(&chain_complex_from_simplicial(&k)).unwrap()
    }

    #[test]
    fn contractible_triangle() {
        let h = groups_of(&[&[0, 1, 2]]);
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(0)]);
        assert_eq!(euler_from_homology(&h), 1);
    }

    #[test]
    fn circle() {
        let h = groups_of(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(1)]);
        assert_eq!(euler_from_homology(&h), 0);
    }

    #[test]
    fn point() {
        let h = groups_of(&[&[0]]);
        assert_eq!(h, vec![HomologyGroup::free(1)]);
        assert_eq!(euler_from_homology(&h), 1);
    }

    #[test]
    fn two_sphere() {
        let h = groups_of(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(
            h,
            vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(1)]
        );
    }

    #[test]
    fn torus_has_rank_two_middle() {
        let h = groups_of(&[
            &[0, 1, 7],
            &[0, 7, 4],
            &[1, 2, 8],
            &[1, 8, 7],
            &[2, 0, 4],
            &[2, 4, 8],
            &[3, 4, 7],
            &[3, 7, 5],
            &[5, 7, 8],
            &[5, 8, 6],
            &[3, 6, 8],
            &[3, 8, 4],
            &[0, 3, 5],
            &[0, 5, 1],
            &[1, 5, 6],
            &[1, 6, 2],
            &[0, 2, 6],
            &[0, 6, 3],
        ]);
        assert_eq!(
            h,
            vec![
                HomologyGroup::free(1),
                HomologyGroup::free(2),
                HomologyGroup::free(1)
            ]
        );
        assert_eq!(euler_from_homology(&h), 0);
    }

    #[test]
    fn projective_plane_torsion() {
        let h = groups_of(&[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 1, 5],
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 1],
            &[4, 5, 2],
            &[5, 1, 3],
        ]);
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(
            h[1],
            HomologyGroup {
                betti: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        assert_eq!(h[2], HomologyGroup::free(0));
        assert_eq!(h[1].to_string(), "Z/2");
    }

    #[test]
    fn report_lines() {
        let h = vec![
            HomologyGroup::free(1),
            HomologyGroup {
                betti: 2,
                torsion: vec![BigInt::from(2)],
            },
        ];
        assert_eq!(homology_report(&h), vec!["H_0 = Z", "H_1 = Z^2 + Z/2"]);
    }
}
