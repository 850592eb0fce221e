//! Point sets `Π_{N,v}` and their underlying lattices.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::exact::{gcd_all, hermite_normal_form, mod_inverse, ExactVector, LatticeBasis, MAX_DIM, MIN_DIM};
use crate::error::{Error, Result};

/// Default cap on `N` for the quadratic pairwise distance scan.
pub const DEFAULT_PAIR_CAP: u64 = 5000;

/// A modulus together with a generating tuple; the tuple length is the dimension.
///
/// Strict specs require `gcd(N, a_1) = 1`; relaxed specs only require
/// `gcd(N, a_1, …, a_d) = 1`. Entries must lie in `[1, N-1]`; their order is
/// not enforced since permutations describe the same point set up to a
/// coordinate swap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    modulus: u64,
    gen: Vec<u64>,
    relaxed: bool,
}

impl GeneratorSpec {
    pub fn new(modulus: u64, gen: Vec<u64>, relaxed: bool) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidSpec(format!("modulus must be at least 2, got {modulus}")));
        }
        if !(MIN_DIM..=MAX_DIM).contains(&gen.len()) {
            return Err(Error::InvalidSpec(format!(
                "generator must have {MIN_DIM} to {MAX_DIM} entries, got {}",
                gen.len()
            )));
        }
        if let Some(bad) = gen.iter().find(|&&a| a == 0 || a >= modulus) {
            return Err(Error::InvalidSpec(format!("entry {bad} outside [1, {}]", modulus - 1)));
        }
        if modulus > (i64::MAX as u64) {
            return Err(Error::InvalidSpec(format!("modulus {modulus} too large")));
        }
        if relaxed {
            let mut all = gen.clone();
            all.push(modulus);
            if gcd_all(&all) != 1 {
                return Err(Error::InvalidSpec("gcd(N, a_1, ..., a_d) must be 1".into()));
            }
        } else if gen[0].gcd(&modulus) != 1 {
            return Err(Error::InvalidSpec("gcd(N, a_1) must be 1".into()));
        }
        Ok(Self { modulus, gen, relaxed })
    }

    pub fn strict(modulus: u64, gen: &[u64]) -> Result<Self> {
        Self::new(modulus, gen.to_vec(), false)
    }

    pub fn relaxed(modulus: u64, gen: &[u64]) -> Result<Self> {
        Self::new(modulus, gen.to_vec(), true)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn gen(&self) -> &[u64] {
        &self.gen
    }

    pub fn dim(&self) -> usize {
        self.gen.len()
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    /// Leading entry is 1, which is the form the triangular basis needs.
    pub fn is_normalized(&self) -> bool {
        self.gen[0] == 1
    }
}

/// The literal point set, ordered by the index `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ExactVector>,
}

impl PointSet {
    pub fn points(&self) -> &[ExactVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distinct_count(&self) -> usize {
        self.points.iter().collect::<HashSet<_>>().len()
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        self.points.contains(v)
    }
}

/// Rescales the generator so its leading entry is 1, then sorts the rest.
pub fn normalize_generator(spec: &GeneratorSpec) -> Result<GeneratorSpec> {
    let n = spec.modulus;
    let inv = mod_inverse(spec.gen[0] as i128, n)? as u128;
    let mut rest: Vec<u64> = spec.gen[1..].iter().map(|&a| ((a as u128 * inv) % n as u128) as u64).collect();
    rest.sort_unstable();
    let mut gen = Vec::with_capacity(spec.dim());
    gen.push(1);
    gen.extend(rest);
    GeneratorSpec::new(n, gen, spec.relaxed)
}

/// Residues `n·a_i mod N` for one index.
fn point_coords(spec: &GeneratorSpec, index: u64) -> impl Iterator<Item = u64> + '_ {
    let n = spec.modulus as u128;
    spec.gen.iter().map(move |&a| ((index as u128 * a as u128) % n) as u64)
}

pub fn build_point_set(spec: &GeneratorSpec) -> PointSet {
    let points = (0..spec.modulus)
        .map(|idx| ExactVector::new(point_coords(spec, idx).map(BigInt::from).collect()).expect("valid dimension"))
        .collect();
    PointSet { points }
}

/// Basis of the lattice whose intersection with the cube is the point set.
///
/// With a leading 1 this is the triangular form with `N` on the
/// anti-diagonal and the generator as the last column; otherwise it is the
/// Hermite normal form of `{v} ∪ {N·e_i}`.
pub fn build_basis(spec: &GeneratorSpec) -> LatticeBasis {
    let d = spec.dim();
    let n = BigInt::from(spec.modulus);
    let gen_col = ExactVector::new(spec.gen.iter().map(|&a| BigInt::from(a)).collect()).expect("valid dimension");
    if spec.is_normalized() {
        let mut cols: Vec<ExactVector> = (1..d).rev().map(|i| ExactVector::axis(d, i, n.clone())).collect();
        cols.push(gen_col);
        LatticeBasis::from_columns(cols).expect("triangular basis is nonsingular")
    } else {
        let mut gens = vec![gen_col];
        gens.extend((0..d).map(|i| ExactVector::axis(d, i, n.clone())));
        hermite_normal_form(&gens).expect("generators contain N·Z^d")
    }
}

/// Basis of the orthogonal projection of the lattice onto coordinates `axes`.
pub fn project_2d(spec: &GeneratorSpec, axes: (usize, usize)) -> Result<LatticeBasis> {
    let (i, j) = axes;
    if i == j || i >= spec.dim() || j >= spec.dim() {
        return Err(Error::InvalidAxes(i, j));
    }
    let n = spec.modulus;
    let (ai, aj) = (spec.gen[i], spec.gen[j]);
    if ai.gcd(&n) == 1 {
        let inv = mod_inverse(ai as i128, n)? as u128;
        let slope = ((aj as u128 * inv) % n as u128) as u64;
        LatticeBasis::from_columns(vec![ExactVector::from_slice(&[0u64, n]), ExactVector::from_slice(&[1u64, slope])])
    } else {
        hermite_normal_form(&[
            ExactVector::from_slice(&[ai, aj]),
            ExactVector::from_slice(&[n, 0u64]),
            ExactVector::from_slice(&[0u64, n]),
        ])
    }
}

/// Whether `x·(1 + b + b²) ≡ 0 (mod N)`, the obstruction to a rhombohedral
/// reduced basis built from `(x, bx, b²x)`.
pub fn degenerate_sum_check(modulus: u64, b: i128, x: i128) -> bool {
    let m = modulus as i128;
    let s = (1 + b.rem_euclid(m) + (b.rem_euclid(m) * b.rem_euclid(m)) % m) % m;
    (x.rem_euclid(m) * s) % m == 0
}

/// Minimal squared distance between distinct points of the literal point set.
pub fn pointset_min_distance(spec: &GeneratorSpec, cap: u64) -> Result<u128> {
    if spec.modulus > cap {
        return Err(Error::CapExceeded { modulus: spec.modulus, cap });
    }
    let d = spec.dim();
    let coords: Vec<i64> = (0..spec.modulus).flat_map(|idx| point_coords(spec, idx).map(|c| c as i64)).collect();
    let count = spec.modulus as usize;
    let best = (0..count)
        .into_par_iter()
        .map(|p| {
            let a = &coords[p * d..(p + 1) * d];
            let mut best = u128::MAX;
            for q in p + 1..count {
                let b = &coords[q * d..(q + 1) * d];
                let dist: u128 = a.iter().zip(b).map(|(x, y)| ((x - y) as i128 * (x - y) as i128) as u128).sum();
                if dist != 0 && dist < best {
                    best = dist;
                }
            }
            best
        })
        .min()
        .unwrap_or(u128::MAX);
    Ok(best)
}
