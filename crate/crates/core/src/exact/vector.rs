use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{MAX_DIM, MIN_DIM};
use crate::error::{Error, Result};

/// A lattice vector with arbitrary-precision integer entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactVector {
    entries: Vec<BigInt>,
}

impl ExactVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if !(MIN_DIM..=MAX_DIM).contains(&entries.len()) {
            return Err(Error::DimensionMismatch {
                expected: if entries.len() < MIN_DIM { MIN_DIM } else { MAX_DIM },
                found: entries.len(),
            });
        }
        Ok(Self { entries })
    }

    /// Builds a vector from machine integers.
    ///
    /// Panics if the length is outside `2..=5`.
    pub fn from_slice<T: Copy + Into<BigInt>>(entries: &[T]) -> Self {
        Self::new(entries.iter().map(|&e| e.into()).collect()).expect("vector dimension must be 2..=5")
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![BigInt::zero(); dim]).expect("vector dimension must be 2..=5")
    }

    /// `scale * e_index`.
    pub fn axis(dim: usize, index: usize, scale: impl Into<BigInt>) -> Self {
        let mut v = Self::zero(dim);
        v.entries[index] = scale.into();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn norm_sq(&self) -> BigInt {
        self.entries.iter().map(|e| e * e).sum()
    }

    pub fn dot(&self, other: &Self) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self { entries: self.entries.iter().map(|e| e * k).collect() }
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: &BigInt, other: &Self) -> Self {
        Self {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + k * b).collect(),
        }
    }

    /// Sign-normalised representative of `±self`: the first nonzero entry is positive.
    pub fn canonical(&self) -> Self {
        match self.entries.iter().find(|e| !e.is_zero()) {
            Some(first) if first.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    /// Deterministic order used to pick among equal-norm vectors: fewer
    /// leading zeros first, then ascending entries. Picks `e_1` among the unit
    /// vectors and `(1, b, c)` among its cyclic rotations.
    pub fn tie_break_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lead = |v: &Self| v.entries.iter().take_while(|e| e.is_zero()).count();
        lead(self).cmp(&lead(other)).then_with(|| self.entries.cmp(&other.entries))
    }

    /// Entries as `i128`, if they all fit.
    pub fn to_i128(&self) -> Option<Vec<i128>> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(ToPrimitive::to_i128).collect()
    }
}

impl Add for &ExactVector {
    type Output = ExactVector;
    fn add(self, rhs: &ExactVector) -> ExactVector {
        ExactVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ExactVector {
    type Output = ExactVector;
    fn sub(self, rhs: &ExactVector) -> ExactVector {
        ExactVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for ExactVector {
    type Output = ExactVector;
    fn neg(self) -> ExactVector {
        ExactVector { entries: self.entries.into_iter().map(|e| -e).collect() }
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squared_norm_is_exact() {
        let v = ExactVector::from_slice(&[19i64, 3, 39]);
        assert_eq!(v.norm_sq(), BigInt::from(1891));
        let big = ExactVector::from_slice(&[i64::MAX, i64::MAX]);
        let m = BigInt::from(i64::MAX);
        assert_eq!(big.norm_sq(), &m * &m * 2);
    }

    #[test]
    fn canonical_sign() {
        let v = ExactVector::from_slice(&[0i64, -2, 5]);
        assert_eq!(v.canonical(), ExactVector::from_slice(&[0i64, 2, -5]));
        assert_eq!(v.canonical(), (-v.clone()).canonical());
    }

    #[test]
    fn tie_break_order() {
        let e1 = ExactVector::from_slice(&[1i64, 0, 0]);
        let e3 = ExactVector::from_slice(&[0i64, 0, 1]);
        assert_eq!(e1.tie_break_cmp(&e3), std::cmp::Ordering::Less);
        let a = ExactVector::from_slice(&[1i64, 13, 169]);
        let b = ExactVector::from_slice(&[13i64, 169, 1]);
        assert_eq!(a.tie_break_cmp(&b), std::cmp::Ordering::Less);
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(ExactVector::new(vec![BigInt::from(1)]).is_err());
        assert!(ExactVector::new(vec![BigInt::from(1); 6]).is_err());
    }
}
