use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Value of `[integer_part; quotients...]`, evaluated bottom-up in exact arithmetic.
pub fn evaluate_continued_fraction(integer_part: i64, quotients: &[u64]) -> Rational {
    let mut acc: Option<Rational> = None;
    for &q in quotients.iter().rev() {
        let term = Rational::from_integer(BigInt::from(q));
        acc = Some(match acc {
            None => term,
            Some(tail) => term + tail.recip(),
        });
    }
    let base = Rational::from_integer(BigInt::from(integer_part));
    match acc {
        None => base,
        Some(tail) => base + tail.recip(),
    }
}

/// All convergents `p_j / q_j` of `[integer_part; quotients...]`, in lowest terms.
pub fn continued_fraction_convergents(integer_part: i64, quotients: &[u64]) -> Vec<Rational> {
    // p_{-1}=1, q_{-1}=0; p_0=a_0, q_0=1
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (BigInt::from(integer_part), BigInt::one());
    let mut out = vec![Rational::new(p.clone(), q.clone())];
    for &a in quotients {
        let a = BigInt::from(a);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(Rational::new(p.clone(), q.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_eighths() {
        let v = evaluate_continued_fraction(0, &[2, 1, 2]);
        assert_eq!(v, Rational::new(BigInt::from(3), BigInt::from(8)));
        let conv = continued_fraction_convergents(0, &[2, 1, 2]);
        assert_eq!(conv.last().unwrap(), &v);
        assert_eq!(conv[1], Rational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn recurrence_agrees_with_bottom_up() {
        let qs = [3u64, 7, 15, 1, 292, 1, 1, 1, 2];
        let conv = continued_fraction_convergents(3, &qs);
        for j in 0..=qs.len() {
            assert_eq!(conv[j], evaluate_continued_fraction(3, &qs[..j]));
        }
    }
}
