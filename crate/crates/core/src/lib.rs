//! Combinatorial topology toolkit: simplicial and regular CW complexes,
//! integer homology via Smith normal form, discrete Morse theory, surface
//! classification, and Poincaré rotation indices of planar vector fields.
//!
//! The main entry points are:
//!
//! - [`SimplicialComplex`] and [`RegularCWComplex`] for encoding spaces,
//! - [`chain::chain_complex_from_simplicial`] / [`homology::homology_groups`]
//!   for integer homology,
//! - the [`morse`] module for discrete gradient fields and Morse complexes,
//! - [`rotation`] for winding numbers of sampled vector fields,
//! - [`corpus`] for a built-in collection of reference spaces.

pub mod chain;
pub mod complex;
pub mod corpus;
pub mod cw;
pub mod homology;
pub mod indexed;
pub mod io;
pub mod matrix;
pub mod morse;
pub mod presentation;
pub mod rotation;
pub mod simplex;
pub mod snf;
pub mod surface;

pub use complex::SimplicialComplex;
pub use cw::RegularCWComplex;
pub use indexed::IndexedComplex;
pub use simplex::{OrientedSimplex, Simplex};
pub use surface::SurfaceType;

/// Vertex labels are arbitrary non-negative integers; within one complex
/// they are distinct and stored in ascending order.
pub type Vertex = u32;

/// Per-dimension cell counts `c_0 .. c_n` of a complex (the last entry is
/// always nonzero).
pub type CVector = Vec<usize>;
