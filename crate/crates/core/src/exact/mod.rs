//! Exact integer and rational arithmetic shared by the lattice code.
//!
//! Everything in here is exact: squared norms are integers, determinants are
//! computed fraction-free and rational solves never round.

mod basis;
mod cf;
mod residue;
mod vector;

pub use basis::{det, det_of_rows, hermite_normal_form, unimodular_equivalent, LatticeBasis};
pub use cf::{continued_fraction_convergents, evaluate_continued_fraction};
pub use residue::{gcd_all, mod_inverse, sym_residue};
pub use vector::ExactVector;

/// Exact rational number over arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Smallest and largest supported lattice dimensions.
pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 5;
