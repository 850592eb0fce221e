//! Exact Fincke–Pohst enumeration.
//!
//! The Gram–Schmidt data of the basis is kept as exact rationals, so the
//! per-level coefficient intervals are decided without rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::{ExactVector, LatticeBasis, Rational};

struct Gso {
    // mu[i][j] for j < i
    mu: Vec<Vec<Rational>>,
    bstar: Vec<Rational>,
}

impl Gso {
    fn new(gram: &[Vec<BigInt>]) -> Self {
        let d = gram.len();
        let mut mu = vec![vec![Rational::zero(); d]; d];
        let mut bstar = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..i {
                let mut acc = Rational::from_integer(gram[i][j].clone());
                for k in 0..j {
                    acc -= &mu[j][k] * &mu[i][k] * &bstar[k];
                }
                mu[i][j] = acc / &bstar[j];
            }
            let mut acc = Rational::from_integer(gram[i][i].clone());
            for k in 0..i {
                acc -= &mu[i][k] * &mu[i][k] * &bstar[k];
            }
            bstar[i] = acc;
        }
        Self { mu, bstar }
    }
}

/// Visits every nonzero lattice vector (one of each `±` pair) with squared
/// norm at most `radius`. The visitor receives coefficients, the vector and
/// its squared norm, and may return a smaller radius to prune the rest of
/// the search.
pub(crate) fn enumerate<F>(basis: &LatticeBasis, radius: BigInt, mut visit: F)
where
    F: FnMut(&[BigInt], &ExactVector, &BigInt) -> Option<BigInt>,
{
    let d = basis.dim();
    let gso = Gso::new(&basis.gram());
    let mut state = Search {
        basis,
        gso: &gso,
        coeffs: vec![BigInt::zero(); d],
        radius: Rational::from_integer(radius),
    };
    state.level(d - 1, Rational::zero(), true, &mut visit);
}

struct Search<'a> {
    basis: &'a LatticeBasis,
    gso: &'a Gso,
    coeffs: Vec<BigInt>,
    radius: Rational,
}

impl Search<'_> {
    fn level<F>(&mut self, level: usize, partial: Rational, upper_zero: bool, visit: &mut F)
    where
        F: FnMut(&[BigInt], &ExactVector, &BigInt) -> Option<BigInt>,
    {
        let d = self.coeffs.len();
        let mut center = Rational::zero();
        for i in level + 1..d {
            if !self.coeffs[i].is_zero() {
                center -= &self.gso.mu[i][level] * Rational::from_integer(self.coeffs[i].clone());
            }
        }
        let start = center.floor().to_integer();
        // x ≤ start going down, then x > start going up; the admissible set is an interval.
        for upward in [false, true] {
            let mut x = if upward { &start + 1 } else { start.clone() };
            if upward && upper_zero && x.is_negative() {
                x = BigInt::zero();
            }
            loop {
                if upper_zero && x.is_negative() {
                    break;
                }
                let off = Rational::from_integer(x.clone()) - &center;
                let next = &partial + &self.gso.bstar[level] * &off * &off;
                if next > self.radius {
                    break;
                }
                self.coeffs[level] = x.clone();
                if level == 0 {
                    if !(upper_zero && x.is_zero()) {
                        let v = self.basis.combine(&self.coeffs);
                        let norm = v.norm_sq();
                        debug_assert_eq!(Rational::from_integer(norm.clone()), next);
                        if let Some(r) = visit(&self.coeffs, &v, &norm) {
                            let r = Rational::from_integer(r);
                            if r < self.radius {
                                self.radius = r;
                            }
                        }
                    }
                } else {
                    self.level(level - 1, next, upper_zero && x.is_zero(), visit);
                }
                x = if upward { x + 1 } else { x - 1 };
            }
        }
        self.coeffs[level] = BigInt::zero();
    }
}

/// Nearest integer to `num / den` (`den > 0`), ties away from zero.
pub(crate) fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let shifted: BigInt = num * 2 + den;
    let twice_den: BigInt = den * 2;
    let q = shifted.div_floor(&twice_den);
    if num.is_negative() && (&shifted % &twice_den).is_zero() {
        // exact half on the negative side rounds away from zero
        q - 1
    } else {
        q
    }
}
