//! Rows of the `(1, 13, 169)` table: moduli with `bc ≡ 1` and `b² ≡ c`.

use crate::error::Result;
use crate::exact::{sym_residue, ExactVector};
use crate::modlat::GeneratorSpec;
use crate::svp::{normalized_length, svp_oracle};

/// Published rows: `(N, x, bx, bx², normalized)`.
pub const PUBLISHED: [(u64, i64, i64, i64, f64); 9] = [
    (61, -4, 9, -5, 0.7127),
    (122, 10, 8, -18, 0.7830),
    (183, -14, 1, 13, 0.5935),
    (244, 19, 3, 39, 1.11366),
    (366, -28, 2, 26, 0.7477),
    (549, -42, 3, 39, 0.8560),
    (732, -56, 4, 52, 0.9421),
    (1098, -84, 6, 78, 1.0785),
    (2196, -168, 12, 156, 1.0032),
];

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub modulus: u64,
    pub x: i128,
    pub bx: i128,
    pub bx2: i128,
    pub lambda_sq: u128,
    pub normalized: f64,
    pub shortest_vector: ExactVector,
    pub published_normalized: f64,
    pub note: String,
}

/// Gauss–Lagrange reduction of the planar basis `(0, N), (1, b)`, returning
/// `(shorter, longer)` in the orientation the iteration produces.
pub fn lagrange_2d(modulus: u64, b: u64) -> ([i128; 2], [i128; 2]) {
    let norm = |w: [i128; 2]| w[0] * w[0] + w[1] * w[1];
    let mut u = [0, modulus as i128];
    let mut v = [1, (b % modulus) as i128];
    if norm(u) > norm(v) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let dot = u[0] * v[0] + u[1] * v[1];
        let nu = norm(u);
        // nearest integer to dot / nu, halves rounded up
        let mu = (2 * dot + nu).div_euclid(2 * nu);
        v = [v[0] - mu * u[0], v[1] - mu * u[1]];
        if norm(v) < nu {
            std::mem::swap(&mut u, &mut v);
        } else {
            return (u, v);
        }
    }
}

/// All nine rows for `v = (1, 13, 169 mod N)`.
pub fn table1_rows() -> Result<Vec<Table1Row>> {
    PUBLISHED
        .iter()
        .map(|&(n, px, pbx, pbx2, pnorm)| {
            let (b, c) = (13u64 % n, 169u64 % n);
            let spec = GeneratorSpec::strict(n, &[1, b, c])?;
            let (lambda_sq, shortest_vector) = svp_oracle(&spec);
            let (_, longer) = lagrange_2d(n, b);
            let x = longer[0];
            let bx = sym_residue(x * b as i128, n);
            let bx2 = sym_residue(x * c as i128, n);
            let published = [px as i128, pbx as i128, pbx2 as i128];
            let note = if [x, bx, bx2] == published {
                String::new()
            } else if [-x, -bx, -bx2] == published {
                format!("global sign differs from published ({px},{pbx},{pbx2})")
            } else {
                format!("differs from published ({px},{pbx},{pbx2})")
            };
            Ok(Table1Row {
                modulus: n,
                x,
                bx,
                bx2,
                lambda_sq,
                normalized: normalized_length(lambda_sq, n, 3),
                shortest_vector,
                published_normalized: pnorm,
                note,
            })
        })
        .collect()
}
