//! Exact computations in the Bruhat-Tits building of `PGL_n` over `Q_p`.
//!
//! Lattices in `Q_p^n` are handled with exact rational arithmetic and the
//! `p`-adic valuation. On top of that the crate provides combinatorial
//! distances between vertices of the building, intersection numbers of linear
//! cycles on `P(M)` for a lattice `M`, and their expression as distances from
//! `{M}` to a family of vertices determined by the cycles.

pub mod building;
pub mod cycles;
pub mod error;
pub mod fp;
pub mod lattice;
pub mod matrix;
pub mod padic;
pub mod random;
pub mod schema;

pub use building::{adjacent, bfs_dist, class_equal, class_key, dist, neighbors, Apartment, ClassKey, EnumCap};
pub use cycles::{
    apartment_distance_demo, build_f, decompose_intersection, dist_to_family, hyperplane_kernel,
    intersect_hyperplanes, properness_check, verify_intersection_distance, CycleConfiguration,
    CycleDecomposition, DualForm, FFamily, LinearCycle, Properness,
};
pub use error::{Error, Result};
pub use lattice::{
    complete_to_complement, elementary_exponents, intersect_spans, invariant_exponents, saturate, triangularize,
    LatticeBasis, SplitSubmodule,
};
pub use matrix::Matrix;
pub use padic::{PAdicContext, Scalar, Valuation};
