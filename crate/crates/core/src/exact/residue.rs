use num_integer::Integer;

use crate::error::{Error, Result};

/// Representative of `x mod modulus` in `(-modulus/2, modulus/2]`.
///
/// For even moduli the tie at `modulus/2` resolves to `+modulus/2`.
pub fn sym_residue(x: i128, modulus: u64) -> i128 {
    debug_assert!(modulus >= 2);
    let m = modulus as i128;
    let r = x.rem_euclid(m);
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

/// The inverse of `a` modulo `modulus`, in `[1, modulus - 1]`.
pub fn mod_inverse(a: i128, modulus: u64) -> Result<u64> {
    let m = modulus as i128;
    let egcd = a.rem_euclid(m).extended_gcd(&m);
    if egcd.gcd != 1 {
        return Err(Error::NotInvertible { a, modulus });
    }
    Ok(egcd.x.rem_euclid(m) as u64)
}

pub fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0u64, |acc, &v| acc.gcd(&v))
}
