//! Shortest vectors, successive minima and Minkowski reduction for `d ≤ 5`.
//!
//! Two independent routes give `λ₁²`: [`svp_oracle`] scans the index cosets
//! of a `Π_{N,v}` lattice, while [`shortest_vector`] enumerates any integer
//! basis exactly. The test suites pit them against each other.

mod enumerate;
mod oracle;
mod reduce;

use num_bigint::BigInt;

use crate::exact::LatticeBasis;

pub use oracle::{oracle_min_sq_at_least, svp_oracle, svp_oracle_sq};
pub use reduce::{
    hermite_normalized, is_minkowski_reduced, minkowski_reduce, pairwise_reduce, shortest_vector, successive_minima,
    REDUCEDNESS_BOX,
};

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub reduced_basis: LatticeBasis,
    pub lambda1_sq: BigInt,
    pub successive_minima_sq: Vec<BigInt>,
    /// `λ₁ / vol^(1/d)`; equals `λ₁ / N^((d-1)/d)` for the modular lattices.
    pub normalized: f64,
    pub certified: bool,
}

/// `λ₁ / N^((d-1)/d)` from an exact squared norm.
pub fn normalized_length(lambda_sq: u128, modulus: u64, dim: usize) -> f64 {
    (lambda_sq as f64).sqrt() / (modulus as f64).powf((dim as f64 - 1.0) / dim as f64)
}
