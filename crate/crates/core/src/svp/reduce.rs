use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::enumerate::{enumerate, round_div};
use super::ReductionReport;
use crate::error::Result;
use crate::exact::{det_of_rows, ExactVector, LatticeBasis};

/// Coefficient range checked by [`is_minkowski_reduced`].
pub const REDUCEDNESS_BOX: i64 = 3;

/// Lagrange-style size reduction of every column against every other one,
/// iterated until no single step shortens a column. Columns come back sorted
/// by squared norm, each in canonical sign.
pub fn pairwise_reduce(basis: &LatticeBasis) -> LatticeBasis {
    let mut cols: Vec<ExactVector> = basis.columns().to_vec();
    let d = cols.len();
    let mut norms: Vec<BigInt> = cols.iter().map(ExactVector::norm_sq).collect();
    loop {
        let mut changed = false;
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let q = round_div(&cols[i].dot(&cols[j]), &norms[j]);
                if q.is_zero() {
                    continue;
                }
                let candidate = cols[i].add_scaled(&-q, &cols[j]);
                let n = candidate.norm_sq();
                if n < norms[i] {
                    cols[i] = candidate;
                    norms[i] = n;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut keyed: Vec<(BigInt, ExactVector)> = norms.into_iter().zip(cols.iter().map(ExactVector::canonical)).collect();
    keyed.sort();
    LatticeBasis::from_columns(keyed.into_iter().map(|(_, c)| c).collect()).expect("unimodular steps keep the basis nonsingular")
}

/// One lattice vector found by enumeration, with its coordinates in the
/// basis that was enumerated.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub norm: BigInt,
    pub vector: ExactVector,
    pub coeffs: Vec<BigInt>,
}

/// All nonzero vectors up to sign with squared norm ≤ `radius`, canonically
/// signed and sorted by norm, then by the tie-break order.
pub(crate) fn vectors_within(basis: &LatticeBasis, radius: &BigInt) -> Vec<Candidate> {
    let mut out = Vec::new();
    enumerate(basis, radius.clone(), |coeffs, v, norm| {
        let canon = v.canonical();
        let coeffs = if &canon == v { coeffs.to_vec() } else { coeffs.iter().map(|c| -c).collect() };
        out.push(Candidate { norm: norm.clone(), vector: canon, coeffs });
        None
    });
    out.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.vector.tie_break_cmp(&b.vector)));
    out
}

/// Exact `λ₁²` and the canonical shortest vector, ties resolved by
/// [`ExactVector::tie_break_cmp`].
pub fn shortest_vector(basis: &LatticeBasis) -> Result<(BigInt, ExactVector)> {
    let reduced = pairwise_reduce(basis);
    let radius = reduced.columns()[0].norm_sq();
    let mut best = radius.clone();
    let mut winners: Vec<ExactVector> = Vec::new();
    enumerate(&reduced, radius, |_, v, norm| {
        if *norm < best {
            best = norm.clone();
            winners.clear();
        }
        if *norm == best {
            winners.push(v.canonical());
        }
        Some(best.clone())
    });
    let v = winners.into_iter().min_by(ExactVector::tie_break_cmp).expect("the shortest basis column is always visited");
    Ok((best, v))
}

fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            for (dst, src) in row.iter_mut().zip(&pivot_row).skip(c) {
                *dst = &*dst * &pivot_row[c] - src * &b;
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Whether the vectors with these integer coordinates extend to a basis:
/// the gcd of all maximal minors of the coordinate matrix is 1.
fn is_primitive(coords: &[Vec<BigInt>]) -> bool {
    let k = coords.len();
    let d = coords[0].len();
    let mut g = BigInt::zero();
    for cols in subsets(d, k) {
        let minor: Vec<Vec<BigInt>> = coords.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        g = g.gcd(&det_of_rows(&minor));
        if g.is_one() {
            return true;
        }
    }
    g.is_one()
}

/// Greedy selection over enumerated vectors, doubling the radius until `d`
/// vectors are accepted. `accept` decides if a candidate extends the
/// current selection.
fn greedy_select<F>(reduced: &LatticeBasis, start_radius: BigInt, accept: F) -> Vec<Candidate>
where
    F: Fn(&[Candidate], &Candidate) -> bool,
{
    let d = reduced.dim();
    let mut radius = start_radius;
    loop {
        let cands = vectors_within(reduced, &radius);
        let mut chosen: Vec<Candidate> = Vec::with_capacity(d);
        let mut used = vec![false; cands.len()];
        'steps: while chosen.len() < d {
            for (idx, c) in cands.iter().enumerate() {
                if !used[idx] && accept(&chosen, c) {
                    used[idx] = true;
                    chosen.push(c.clone());
                    continue 'steps;
                }
            }
            break;
        }
        if chosen.len() == d {
            return chosen;
        }
        radius *= 2;
    }
}

/// Squared successive minima `λ₁² ≤ … ≤ λ_d²`.
pub fn successive_minima(basis: &LatticeBasis) -> Result<Vec<BigInt>> {
    let reduced = pairwise_reduce(basis);
    let (l1, _) = shortest_vector(&reduced)?;
    let chosen = greedy_select(&reduced, l1, |chosen, c| {
        let mut rows: Vec<Vec<BigInt>> = chosen.iter().map(|x| x.coeffs.clone()).collect();
        rows.push(c.coeffs.clone());
        rank(&rows) == rows.len()
    });
    Ok(chosen.into_iter().map(|c| c.norm).collect())
}

/// Minkowski-reduced basis of the lattice: each column is a shortest vector
/// that extends the previous columns to a basis. Ties follow the canonical
/// tie-break order.
pub fn minkowski_reduce(basis: &LatticeBasis) -> Result<ReductionReport> {
    let reduced = pairwise_reduce(basis);
    let (l1, _) = shortest_vector(&reduced)?;
    let chosen = greedy_select(&reduced, l1.clone(), |chosen, c| {
        let mut rows: Vec<Vec<BigInt>> = chosen.iter().map(|x| x.coeffs.clone()).collect();
        rows.push(c.coeffs.clone());
        is_primitive(&rows)
    });
    let reduced_basis = LatticeBasis::from_columns(chosen.into_iter().map(|c| c.vector).collect())?;
    let successive_minima_sq = successive_minima(&reduced)?;
    let lambda1_sq = reduced_basis.columns()[0].norm_sq();
    debug_assert_eq!(lambda1_sq, l1);
    let normalized = hermite_normalized(&lambda1_sq, reduced_basis.det(), reduced_basis.dim());
    let certified = is_minkowski_reduced(&reduced_basis)?;
    Ok(ReductionReport { reduced_basis, lambda1_sq, successive_minima_sq, normalized, certified })
}

/// `λ₁ / |det|^(1/d)`.
pub fn hermite_normalized(lambda_sq: &BigInt, det: &BigInt, dim: usize) -> f64 {
    let l = lambda_sq.to_f64().unwrap_or(f64::INFINITY).sqrt();
    let vol = det.abs().to_f64().unwrap_or(f64::INFINITY);
    l / vol.powf(1.0 / dim as f64)
}

/// Checks nondecreasing norms, `‖v_i + Σ_{j<i} x_j v_j‖ ≥ ‖v_i‖` for all
/// `|x_j| ≤ REDUCEDNESS_BOX`, and that the first column realises `λ₁`.
pub fn is_minkowski_reduced(basis: &LatticeBasis) -> Result<bool> {
    let cols = basis.columns();
    let norms: Vec<BigInt> = cols.iter().map(ExactVector::norm_sq).collect();
    if norms.windows(2).any(|w| w[0] > w[1]) {
        return Ok(false);
    }
    for i in 1..cols.len() {
        let mut xs = vec![-REDUCEDNESS_BOX; i];
        loop {
            if xs.iter().any(|&x| x != 0) {
                let mut v = cols[i].clone();
                for (j, &x) in xs.iter().enumerate() {
                    if x != 0 {
                        v = v.add_scaled(&BigInt::from(x), &cols[j]);
                    }
                }
                if v.norm_sq() < norms[i] {
                    return Ok(false);
                }
            }
            // odometer step over [-B, B]^i
            let mut k = 0;
            while k < i && xs[k] == REDUCEDNESS_BOX {
                xs[k] = -REDUCEDNESS_BOX;
                k += 1;
            }
            if k == i {
                break;
            }
            xs[k] += 1;
        }
    }
    let (l1, _) = shortest_vector(basis)?;
    Ok(l1 == norms[0])
}
