//! Exhaustive searches for generators with the longest shortest vector.

mod cache;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::svp::{normalized_length, oracle_min_sq_at_least};

pub use cache::{ResultCache, CACHE_SCHEMA_VERSION};

/// Best generator found for one modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchRecord {
    pub modulus: u64,
    pub dim: usize,
    pub best_gen: Vec<u64>,
    pub lambda_sq: u128,
    pub normalized: f64,
    pub relaxed: bool,
    pub candidates_scanned: u64,
}

#[derive(Clone, Debug)]
struct BatchBest {
    lambda_sq: u128,
    gen: Vec<u64>,
    scanned: u64,
}

fn merge(acc: Option<BatchBest>, next: Option<BatchBest>) -> Option<BatchBest> {
    match (acc, next) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            let scanned = a.scanned + b.scanned;
            let mut winner = if b.lambda_sq > a.lambda_sq || (b.lambda_sq == a.lambda_sq && b.gen < a.gen) { b } else { a };
            winner.scanned = scanned;
            Some(winner)
        }
    }
}

/// Scans `(a, b, c)` for fixed `(a, b)` over all valid `c`, in ascending order.
fn scan_batch(modulus: u64, a: u64, b: u64, relaxed: bool) -> Option<BatchBest> {
    let mut best: Option<BatchBest> = None;
    let mut scanned = 0u64;
    let ab = modulus.gcd(&a).gcd(&b);
    for c in b + 1..modulus {
        if relaxed && ab.gcd(&c) != 1 {
            continue;
        }
        scanned += 1;
        let cutoff = best.as_ref().map_or(0, |x| x.lambda_sq);
        let gen = [a, b, c];
        if let Some(l) = oracle_min_sq_at_least(modulus, &gen, cutoff) {
            // equal λ keeps the earlier (lexicographically smaller) generator
            if best.as_ref().is_none_or(|x| l > x.lambda_sq) {
                best = Some(BatchBest { lambda_sq: l, gen: gen.to_vec(), scanned: 0 });
            }
        }
    }
    best.map(|mut b| {
        b.scanned = scanned;
        b
    })
}

/// The generator maximising `λ₁²` for one modulus, ties broken by the
/// lexicographically smallest generator.
///
/// Strict mode scans `(1, b, c)` with `1 < b < c < N`; relaxed mode scans every
/// `0 < a < b < c < N` with `gcd(N, a, b, c) = 1`. Runs on the current rayon pool.
pub fn best_for_n(modulus: u64, dim: usize, relaxed: bool) -> Result<SearchRecord> {
    if dim != 3 {
        return Err(Error::InvalidSpec(format!("search supports dimension 3 only, got {dim}")));
    }
    if modulus < 4 {
        return Err(Error::InvalidSpec(format!("search needs N >= 4, got {modulus}")));
    }
    let pairs: Vec<(u64, u64)> = if relaxed {
        (1..modulus).flat_map(|a| (a + 1..modulus).map(move |b| (a, b))).collect()
    } else {
        (2..modulus).map(|b| (1, b)).collect()
    };
    let batches: Vec<Option<BatchBest>> =
        pairs.par_iter().map(|&(a, b)| scan_batch(modulus, a, b, relaxed)).collect();
    let best = batches.into_iter().fold(None, merge).ok_or_else(|| {
        Error::InvalidSpec(format!("no admissible generators for N = {modulus}"))
    })?;
    Ok(SearchRecord {
        modulus,
        dim,
        normalized: normalized_length(best.lambda_sq, modulus, dim),
        best_gen: best.gen,
        lambda_sq: best.lambda_sq,
        relaxed,
        candidates_scanned: best.scanned,
    })
}

/// One record per modulus in `[n_min, n_max]`, ordered by modulus. `jobs`
/// sets the worker count (0 = rayon default); the output does not depend on
/// it. `on_record` fires as each modulus finishes, in completion order.
pub fn scan_range<F>(n_min: u64, n_max: u64, dim: usize, relaxed: bool, jobs: usize, on_record: F) -> Result<Vec<SearchRecord>>
where
    F: Fn(&SearchRecord) + Sync,
{
    if n_min > n_max {
        return Err(Error::InvalidSpec(format!("empty range [{n_min}, {n_max}]")));
    }
    let moduli: Vec<u64> = (n_min..=n_max).collect();
    scan_moduli(&moduli, dim, relaxed, jobs, on_record)
}

/// Like [`scan_range`] for an arbitrary list; results follow the input order.
pub fn scan_moduli<F>(moduli: &[u64], dim: usize, relaxed: bool, jobs: usize, on_record: F) -> Result<Vec<SearchRecord>>
where
    F: Fn(&SearchRecord) + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?;
    pool.install(|| {
        moduli
            .par_iter()
            .map(|&n| {
                let rec = best_for_n(n, dim, relaxed)?;
                on_record(&rec);
                Ok(rec)
            })
            .collect()
    })
}

/// Whether two generators give isometric lattices through a unit multiplier
/// mod `N`, a permutation of coordinates and per-coordinate sign changes.
pub fn same_generator_class(modulus: u64, g1: &[u64], g2: &[u64]) -> bool {
    if g1.len() != g2.len() {
        return false;
    }
    let fold = |x: u64| x.min(modulus - x);
    let mut target: Vec<u64> = g2.iter().map(|&a| fold(a % modulus)).collect();
    target.sort_unstable();
    (1..modulus).filter(|u| u.gcd(&modulus) == 1).any(|u| {
        let mut scaled: Vec<u64> =
            g1.iter().map(|&a| fold(((a as u128 * u as u128) % modulus as u128) as u64)).collect();
        scaled.sort_unstable();
        scaled == target
    })
}
