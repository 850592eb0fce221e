//! Exact toolkit for rank-1 modular lattices.
//!
//! A generator `(a_1, …, a_d)` and modulus `N` define the point set
//! `{(n·a_1 mod N, …, n·a_d mod N) : 0 ≤ n < N}`, which is the intersection of
//! an integer lattice of covolume `N^(d-1)` with the cube `[0, N-1]^d`. This
//! crate builds those lattices, computes their shortest vectors and
//! Minkowski-reduced bases exactly for `d ≤ 5`, generates the explicit
//! near-optimal families, and runs exhaustive parameter searches.

pub mod cli;
pub mod error;
pub mod exact;
pub mod families;
pub mod modlat;
pub mod search;
pub mod svp;

pub use error::{Error, Result};
pub use exact::{ExactVector, LatticeBasis, Rational};
pub use modlat::{GeneratorSpec, PointSet};
pub use svp::ReductionReport;
