//! Brute-force shortest vector for `Π_{N,v}` lattices.
//!
//! Every lattice vector is congruent to `n·v (mod N)` for some index `n`, and
//! the shortest vector of that coset is its componentwise symmetric residue.
//! Scanning `n = 1..=N/2` (the other half are negatives) and comparing against
//! `N²` (the index-0 coset `N·Z^d`) gives `λ₁²` exactly in `O(N·d)`.

use num_bigint::BigInt;

use crate::exact::{sym_residue, ExactVector};
use crate::modlat::GeneratorSpec;

/// `λ₁²` of the lattice, or `None` as soon as some vector shorter than
/// `cutoff` is seen. A cutoff of 0 never exits early.
pub fn oracle_min_sq_at_least(modulus: u64, gen: &[u64], cutoff: u128) -> Option<u128> {
    if modulus <= 1 << 30 {
        scan_narrow(modulus, gen, cutoff)
    } else {
        scan_wide(modulus, gen, cutoff)
    }
}

// Incremental residues in u64; valid while d·(N/2)² fits comfortably.
fn scan_narrow(m: u64, gen: &[u64], cutoff: u128) -> Option<u128> {
    let half = m / 2;
    let mut residues = vec![0u64; gen.len()];
    let mut best = m as u128 * m as u128;
    for _ in 1..=half {
        let mut sum: u128 = 0;
        for (r, &a) in residues.iter_mut().zip(gen) {
            *r += a;
            if *r >= m {
                *r -= m;
            }
            let s = if *r > half { m - *r } else { *r };
            sum += (s * s) as u128;
        }
        if sum < best {
            best = sum;
            if best < cutoff {
                return None;
            }
        }
    }
    (best >= cutoff).then_some(best)
}

fn scan_wide(modulus: u64, gen: &[u64], cutoff: u128) -> Option<u128> {
    let mut best = modulus as u128 * modulus as u128;
    for idx in 1..=modulus / 2 {
        let sum = coset_norm(modulus, gen, idx);
        if sum < best {
            best = sum;
            if best < cutoff {
                return None;
            }
        }
    }
    (best >= cutoff).then_some(best)
}

fn coset_norm(modulus: u64, gen: &[u64], idx: u64) -> u128 {
    gen.iter()
        .map(|&a| {
            let r = sym_residue(idx as i128 * a as i128, modulus);
            (r * r) as u128
        })
        .sum()
}

/// Exact `λ₁²` and the canonical shortest vector: first nonzero entry
/// positive, ties resolved by [`ExactVector::tie_break_cmp`].
pub fn svp_oracle(spec: &GeneratorSpec) -> (u128, ExactVector) {
    let modulus = spec.modulus();
    let gen = spec.gen();
    let d = spec.dim();
    let best = oracle_min_sq_at_least(modulus, gen, 0).expect("cutoff 0 never exits early");
    let mut winners: Vec<ExactVector> = (1..=modulus / 2)
        .filter(|&idx| coset_norm(modulus, gen, idx) == best)
        .map(|idx| {
            let entries = gen.iter().map(|&a| BigInt::from(sym_residue(idx as i128 * a as i128, modulus))).collect();
            ExactVector::new(entries).expect("valid dimension").canonical()
        })
        .collect();
    if best == modulus as u128 * modulus as u128 {
        winners.extend((0..d).map(|i| ExactVector::axis(d, i, modulus)));
    }
    let vector = winners.into_iter().min_by(ExactVector::tie_break_cmp).expect("at least one minimiser");
    (best, vector)
}

/// `λ₁²` only.
pub fn svp_oracle_sq(spec: &GeneratorSpec) -> u128 {
    oracle_min_sq_at_least(spec.modulus(), spec.gen(), 0).expect("cutoff 0 never exits early")
}
