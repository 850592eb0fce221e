use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactVector, Rational};
use crate::error::{Error, Result};

/// Square integer basis matrix stored by columns, with its exact determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    columns: Vec<ExactVector>,
    det: BigInt,
}

impl LatticeBasis {
    /// Fails with `SingularBasis` when the columns are dependent and
    /// `DimensionMismatch` when the matrix is not square.
    pub fn from_columns(columns: Vec<ExactVector>) -> Result<Self> {
        let dim = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        let rows: Vec<Vec<BigInt>> = (0..dim)
            .map(|r| columns.iter().map(|c| c.entries()[r].clone()).collect())
            .collect();
        let det = det_of_rows(&rows);
        if det.is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok(Self { columns, det })
    }

    /// Builds the basis from a row-major matrix, i.e. the matrix as printed.
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let dim = rows.len();
        let cols = (0..dim)
            .map(|c| {
                let col: Vec<BigInt> = rows
                    .iter()
                    .map(|r| r.get(c).cloned().ok_or(Error::DimensionMismatch { expected: dim, found: r.len() }))
                    .collect::<Result<_>>()?;
                ExactVector::new(col)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(cols)
    }

    pub fn from_i64_columns(columns: &[&[i64]]) -> Result<Self> {
        Self::from_columns(columns.iter().map(|c| ExactVector::from_slice(c)).collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_columns((0..dim).map(|i| ExactVector::axis(dim, i, 1)).collect())
            .expect("identity is nonsingular")
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[ExactVector] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<ExactVector> {
        self.columns
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn gram(&self) -> Vec<Vec<BigInt>> {
        self.columns.iter().map(|a| self.columns.iter().map(|b| a.dot(b)).collect()).collect()
    }

    /// `Σ coeffs[i] * column[i]`
    pub fn combine(&self, coeffs: &[BigInt]) -> ExactVector {
        let dim = self.dim();
        self.columns
            .iter()
            .zip(coeffs)
            .fold(ExactVector::zero(dim), |acc, (col, k)| if k.is_zero() { acc } else { acc.add_scaled(k, col) })
    }

    /// Row-major entries.
    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim()).map(|r| self.columns.iter().map(|c| c.entries()[r].clone()).collect()).collect()
    }

    /// Whether `v` lies in the lattice spanned by the columns.
    pub fn contains(&self, v: &ExactVector) -> bool {
        match solve(self, std::slice::from_ref(v)) {
            Some(sol) => sol[0].iter().all(|q| q.is_integer()),
            None => false,
        }
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub fn det(basis: &LatticeBasis) -> BigInt {
    basis.det.clone()
}

/// Fraction-free (Bareiss) determinant of a square row-major matrix.
pub fn det_of_rows(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solves `basis * X = rhs` over the rationals. Returns one solution column
/// per right-hand side, or `None` when the basis is singular.
fn solve(basis: &LatticeBasis, rhs: &[ExactVector]) -> Option<Vec<Vec<Rational>>> {
    let n = basis.dim();
    let k = rhs.len();
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            basis
                .columns
                .iter()
                .map(|c| Rational::from_integer(c.entries()[r].clone()))
                .chain(rhs.iter().map(|c| Rational::from_integer(c.entries().get(r).cloned().unwrap_or_default())))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (dst, src) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *dst -= &f * src;
                }
            }
        }
    }
    Some((0..k).map(|j| (0..n).map(|r| aug[r][n + j].clone()).collect()).collect())
}

/// True iff `b1` and `b2` generate the same lattice, i.e. `b1⁻¹·b2` is an
/// integer matrix of determinant ±1.
pub fn unimodular_equivalent(b1: &LatticeBasis, b2: &LatticeBasis) -> Result<bool> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch { expected: b1.dim(), found: b2.dim() });
    }
    if b1.det.abs() != b2.det.abs() {
        return Ok(false);
    }
    let x = solve(b1, &b2.columns).ok_or(Error::SingularBasis)?;
    if !x.iter().flatten().all(|q| q.is_integer()) {
        return Ok(false);
    }
    let rows: Vec<Vec<BigInt>> =
        (0..b1.dim()).map(|r| x.iter().map(|col| col[r].to_integer()).collect()).collect();
    Ok(det_of_rows(&rows).abs().is_one())
}

/// Column-style Hermite normal form of the lattice spanned by `generators`:
/// a lower-triangular basis with positive diagonal and off-diagonal row
/// entries reduced into `[0, diagonal)`.
pub fn hermite_normal_form(generators: &[ExactVector]) -> Result<LatticeBasis> {
    let dim = generators.first().map(ExactVector::dim).ok_or(Error::SingularBasis)?;
    let mut cols: Vec<Vec<BigInt>> = generators.iter().map(|g| g.entries().to_vec()).collect();
    if cols.len() < dim {
        return Err(Error::SingularBasis);
    }
    for row in 0..dim {
        // Fold every later column into column `row` with extended gcd steps.
        for j in row + 1..cols.len() {
            if cols[j][row].is_zero() {
                continue;
            }
            let a = cols[row][row].clone();
            let b = cols[j][row].clone();
            let eg = a.extended_gcd(&b);
            let (ua, ub) = (&a / &eg.gcd, &b / &eg.gcd);
            let new_pivot: Vec<BigInt> =
                cols[row].iter().zip(&cols[j]).map(|(p, q)| &eg.x * p + &eg.y * q).collect();
            let new_j: Vec<BigInt> = cols[row].iter().zip(&cols[j]).map(|(p, q)| &ub * p - &ua * q).collect();
            cols[row] = new_pivot;
            cols[j] = new_j;
        }
        if cols[row][row].is_zero() {
            return Err(Error::SingularBasis);
        }
        if cols[row][row].is_negative() {
            cols[row] = cols[row].iter().map(|e| -e).collect();
        }
        let pivot = cols[row][row].clone();
        for j in 0..row {
            let q = cols[j][row].div_floor(&pivot);
            if !q.is_zero() {
                let pivot_col = cols[row].clone();
                for (e, p) in cols[j].iter_mut().zip(&pivot_col) {
                    *e -= &q * p;
                }
            }
        }
    }
    if cols[dim..].iter().any(|c| c.iter().any(|e| !e.is_zero())) {
        return Err(Error::SingularBasis);
    }
    cols.truncate(dim);
    LatticeBasis::from_columns(cols.into_iter().map(ExactVector::new).collect::<Result<_>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * cofactor_det(&minor)
            })
            .sum()
    }

    fn big_rows(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn lemma_basis_covolume() {
        let b = LatticeBasis::from_i64_columns(&[&[0, 0, 244], &[0, 244, 0], &[1, 13, 169]]).unwrap();
        assert_eq!(b.det().abs(), BigInt::from(59536));
    }

    #[test]
    fn fcc_determinant() {
        let rows = vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(cofactor_det(&rows), 2);
        assert_eq!(det_of_rows(&big_rows(&rows)), BigInt::from(2));
        assert_eq!(det(&LatticeBasis::identity(4)), BigInt::one());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 19) as i64 - 9
        };
        for n in 1..=5 {
            for _ in 0..200 {
                let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                assert_eq!(det_of_rows(&big_rows(&m)), BigInt::from(cofactor_det(&m)));
            }
        }
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            LatticeBasis::from_i64_columns(&[&[1, 2], &[2, 4]]),
            Err(Error::SingularBasis)
        ));
    }

    #[test]
    fn unimodular_examples() {
        let b = LatticeBasis::from_i64_columns(&[&[2, 1, 0], &[0, 3, 1], &[1, 1, 5]]).unwrap();
        assert!(unimodular_equivalent(&b, &b).unwrap());
        let id = LatticeBasis::identity(3);
        let two = LatticeBasis::from_i64_columns(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap();
        assert!(!unimodular_equivalent(&id, &two).unwrap());
        let sheared = LatticeBasis::from_i64_columns(&[&[1, 0, 0], &[5, 1, 0], &[-3, 7, 1]]).unwrap();
        assert!(unimodular_equivalent(&id, &sheared).unwrap());
        assert!(matches!(
            unimodular_equivalent(&id, &LatticeBasis::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hnf_of_modular_generators() {
        // span{(6,15,18)} + 20·Z³
        let gens = vec![
            ExactVector::from_slice(&[6i64, 15, 18]),
            ExactVector::from_slice(&[20i64, 0, 0]),
            ExactVector::from_slice(&[0i64, 20, 0]),
            ExactVector::from_slice(&[0i64, 0, 20]),
        ];
        let h = hermite_normal_form(&gens).unwrap();
        assert_eq!(h.det().abs(), BigInt::from(400));
        for g in &gens {
            assert!(h.contains(g));
        }
        for (i, c) in h.columns().iter().enumerate() {
            for r in 0..i {
                assert!(c.entries()[r].is_zero());
            }
        }
    }
}
