//! Explicit lattice families with closed-form shortest vectors, reference
//! lattices and the Hermite bound.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{continued_fraction_convergents, ExactVector, LatticeBasis, Rational};
use crate::modlat::{build_basis, GeneratorSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `N = m³ - 1`, `v = (1, m, m²)`; approximates a cubic lattice.
    Thm1Cubic,
    /// `N = (b³ - 1)/2`, `b = 2k + 1`; approximates FCC.
    Thm2Fcc3d,
    Thm3FourD,
    Thm3FiveD,
    /// Continued-fraction convergents approaching the hexagonal lattice.
    Hex2d,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] =
        [FamilyId::Thm1Cubic, FamilyId::Thm2Fcc3d, FamilyId::Thm3FourD, FamilyId::Thm3FiveD, FamilyId::Hex2d];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Thm1Cubic => "thm1_cubic",
            FamilyId::Thm2Fcc3d => "thm2_fcc3d",
            FamilyId::Thm3FourD => "thm3_4d",
            FamilyId::Thm3FiveD => "thm3_5d",
            FamilyId::Hex2d => "hex_2d",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            FamilyId::Hex2d => 2,
            FamilyId::Thm1Cubic | FamilyId::Thm2Fcc3d => 3,
            FamilyId::Thm3FourD => 4,
            FamilyId::Thm3FiveD => 5,
        }
    }

    pub fn min_param(self) -> u64 {
        match self {
            FamilyId::Thm1Cubic => 3,
            FamilyId::Hex2d => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family id {s:?}")))
    }
}

/// A constant of the form `2^a · 3^b` with rational exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LimitConstant {
    pub two_exp: (i64, i64),
    pub three_exp: (i64, i64),
}

impl LimitConstant {
    pub const fn power_of_two(num: i64, den: i64) -> Self {
        Self { two_exp: (num, den), three_exp: (0, 1) }
    }

    pub fn value(&self) -> f64 {
        let e = |(n, d): (i64, i64)| n as f64 / d as f64;
        2f64.powf(e(self.two_exp)) * 3f64.powf(e(self.three_exp))
    }
}

impl fmt::Display for LimitConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |base: u32, (n, d): (i64, i64)| match (n, d) {
            (0, _) => None,
            (n, 1) => Some(format!("{base}^{n}")),
            (n, d) => Some(format!("{base}^({n}/{d})")),
        };
        let parts: Vec<String> = [part(2, self.two_exp), part(3, self.three_exp)].into_iter().flatten().collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// One member of a family.
#[derive(Clone, Debug)]
pub struct FamilyPoint {
    pub family: FamilyId,
    pub param: u64,
    pub spec: GeneratorSpec,
    /// Closed-form `λ₁²`; for the hexagonal family this is the exact
    /// two-dimensional reduction of `X_s`.
    pub predicted_lambda_sq: u128,
    /// The displayed shortest vector, where the construction gives one.
    pub predicted_vector: Option<ExactVector>,
    pub candidate_basis: LatticeBasis,
    pub limit_constant: LimitConstant,
}

impl FamilyPoint {
    pub fn modulus(&self) -> u64 {
        self.spec.modulus()
    }

    pub fn gen(&self) -> &[u64] {
        self.spec.gen()
    }
}

fn out_of_range(family: FamilyId, param: u64) -> Error {
    Error::ParamOutOfRange { family: family.as_str().into(), param: param.min(i64::MAX as u64) as i64 }
}

fn powers(b: u64, count: usize, family: FamilyId, param: u64) -> Result<Vec<u64>> {
    let mut out = vec![1u64];
    while out.len() < count {
        let next = out[out.len() - 1].checked_mul(b).ok_or_else(|| out_of_range(family, param))?;
        out.push(next);
    }
    Ok(out)
}

fn basis_from(columns: Vec<Vec<i128>>) -> LatticeBasis {
    LatticeBasis::from_columns(
        columns.into_iter().map(|c| ExactVector::new(c.into_iter().map(BigInt::from).collect()).expect("dim")).collect(),
    )
    .expect("family candidate bases are nonsingular")
}

pub fn family_point(family: FamilyId, param: u64) -> Result<FamilyPoint> {
    match family {
        FamilyId::Thm1Cubic => family_thm1(param),
        FamilyId::Thm2Fcc3d => family_thm2(param),
        FamilyId::Thm3FourD => family_thm3_4d(param),
        FamilyId::Thm3FiveD => family_thm3_5d(param),
        FamilyId::Hex2d => family_hex2d(param),
    }
}

pub fn family_thm1(m: u64) -> Result<FamilyPoint> {
    let id = FamilyId::Thm1Cubic;
    if !(3..=2_000_000).contains(&m) {
        return Err(out_of_range(id, m));
    }
    let n = m * m * m - 1;
    let gen = vec![1, m, m * m];
    let (m, mm) = (m as i128, (m * m) as i128);
    let predicted = (1 + mm + mm * mm) as u128;
    let v1 = vec![1, m, mm];
    Ok(FamilyPoint {
        family: id,
        param: m as u64,
        spec: GeneratorSpec::strict(n, &gen)?,
        predicted_lambda_sq: predicted,
        predicted_vector: Some(ExactVector::new(v1.iter().map(|&e| BigInt::from(e)).collect())?),
        candidate_basis: basis_from(vec![v1, vec![-m, -mm, -1], vec![-mm, -1, -m]]),
        limit_constant: LimitConstant::power_of_two(0, 1),
    })
}

pub fn family_thm2(k: u64) -> Result<FamilyPoint> {
    let id = FamilyId::Thm2Fcc3d;
    if !(1..=1_000_000).contains(&k) {
        return Err(out_of_range(id, k));
    }
    let b = 2 * k + 1;
    let gen = powers(b, 3, id, k)?;
    let n = (b * b * b - 1) / 2;
    let (k, kb) = (k as i128, (k * b) as i128);
    let s = k + kb;
    let v1 = vec![-k, -kb, s];
    let v2 = vec![-kb, s, -k];
    let v3 = vec![s + 1, k + 1, s + k + 1];
    Ok(FamilyPoint {
        family: id,
        param: k as u64,
        spec: GeneratorSpec::strict(n, &gen)?,
        predicted_lambda_sq: (2 * k * k * (3 + 6 * k + 4 * k * k)) as u128,
        predicted_vector: Some(ExactVector::new(v1.iter().map(|&e| BigInt::from(e)).collect())?),
        candidate_basis: basis_from(vec![v1, v2, v3]),
        limit_constant: LimitConstant::power_of_two(1, 6),
    })
}

pub fn family_thm3_4d(k: u64) -> Result<FamilyPoint> {
    let id = FamilyId::Thm3FourD;
    if !(1..=20_000).contains(&k) {
        return Err(out_of_range(id, k));
    }
    let b = 2 * k + 1;
    let gen = powers(b, 4, id, k)?;
    let n = (gen[3] * b - 1) / 2;
    let (k, b) = (k as i128, b as i128);
    let s = k + k * b + k * b * b;
    let v1 = vec![-k, -k * b, -k * b * b, s];
    let v2 = vec![-k * b, -k * b * b, s, -k];
    let v3 = vec![-s, k, k * b, k * b * b];
    let t = k + k * b + 1;
    let w = 2 * k + k * b + k * b * b + 1;
    let v4 = vec![t, w, t, w];
    let predicted = k * k * (1 + b * b + b.pow(4)) + s * s;
    Ok(FamilyPoint {
        family: id,
        param: k as u64,
        spec: GeneratorSpec::strict(n, &gen)?,
        predicted_lambda_sq: predicted as u128,
        predicted_vector: Some(ExactVector::new(v1.iter().map(|&e| BigInt::from(e)).collect())?),
        candidate_basis: basis_from(vec![v1, v2, v3, v4]),
        limit_constant: LimitConstant::power_of_two(1, 4),
    })
}

pub fn family_thm3_5d(k: u64) -> Result<FamilyPoint> {
    let id = FamilyId::Thm3FiveD;
    if !(1..=2_000).contains(&k) {
        return Err(out_of_range(id, k));
    }
    let b = 2 * k + 1;
    let gen = powers(b, 5, id, k)?;
    let n = (gen[4] * b - 1) / 2;
    let (k, b) = (k as i128, b as i128);
    let q = 2 * k * k + 2 * k + 1;
    let f = 4 * k * (k + 1) * q;
    let r = (4 * k * k + 2 * k + 1) * (k + 1);
    let v1 = vec![-k, -k * b, -k * b * b, -k * b.pow(3), f];
    let v2 = vec![k * b * b, k * b.pow(3), -f, k, k * b];
    let v3 = vec![-k * b.pow(3), f, -k, -k * b, -k * b * b];
    let v4 = vec![-f, k, k * b, k * b * b, k * b.pow(3)];
    let v5 = vec![q * b, q * b * b, r, r * b, q];
    let predicted = k * k * (1 + b * b + b.pow(4) + b.pow(6)) + 16 * k * k * (k + 1) * (k + 1) * q * q;
    Ok(FamilyPoint {
        family: id,
        param: k as u64,
        spec: GeneratorSpec::strict(n, &gen)?,
        predicted_lambda_sq: predicted as u128,
        predicted_vector: Some(ExactVector::new(v1.iter().map(|&e| BigInt::from(e)).collect())?),
        candidate_basis: basis_from(vec![v1, v2, v3, v4, v5]),
        limit_constant: LimitConstant::power_of_two(3, 10),
    })
}

/// Partial quotients `[2, 1, 2, 1, …, 1, 2]` of length `4s + 3`.
pub fn hex_quotients(s: u64) -> Vec<u64> {
    (0..4 * s + 3).map(|i| if i % 2 == 0 { 2 } else { 1 }).collect()
}

/// `b_s / N_s` as an exact fraction in lowest terms.
pub fn hex_convergent(s: u64) -> Rational {
    continued_fraction_convergents(0, &hex_quotients(s)).pop().expect("non-empty expansion")
}

pub fn family_hex2d(s: u64) -> Result<FamilyPoint> {
    let id = FamilyId::Hex2d;
    if s > 15 {
        return Err(out_of_range(id, s));
    }
    let frac = hex_convergent(s);
    let n = frac.denom().to_u64().ok_or_else(|| out_of_range(id, s))?;
    let b = frac.numer().to_u64().ok_or_else(|| out_of_range(id, s))?;
    let spec = GeneratorSpec::strict(n, &[1, b])?;
    let basis = build_basis(&spec);
    let (l, v) = crate::svp::shortest_vector(&basis)?;
    Ok(FamilyPoint {
        family: id,
        param: s,
        spec,
        predicted_lambda_sq: l.to_u128().ok_or_else(|| out_of_range(id, s))?,
        predicted_vector: Some(v),
        candidate_basis: basis,
        // √γ₂ = 2^(1/2) · 3^(-1/4)
        limit_constant: LimitConstant { two_exp: (1, 2), three_exp: (-1, 4) },
    })
}

/// Hermite constant `γ_d` for `d = 1..=5`.
pub fn hermite_gamma(dim: usize) -> f64 {
    match dim {
        1 => 1.0,
        2 => 2.0 / 3f64.sqrt(),
        3 => 2f64.powf(1.0 / 3.0),
        4 => 2f64.sqrt(),
        5 => 2f64.powf(3.0 / 5.0),
        _ => panic!("Hermite constant only tabulated for dimensions 1..=5"),
    }
}

/// `√γ_d` as an exact power form.
pub fn sqrt_gamma_form(dim: usize) -> LimitConstant {
    match dim {
        2 => LimitConstant { two_exp: (1, 2), three_exp: (-1, 4) },
        3 => LimitConstant::power_of_two(1, 6),
        4 => LimitConstant::power_of_two(1, 4),
        5 => LimitConstant::power_of_two(3, 10),
        _ => LimitConstant::power_of_two(0, 1),
    }
}

/// Upper bound `√γ_d · N^((d-1)/d)` on the shortest distance.
pub fn hermite_bound(dim: usize, modulus: u64) -> f64 {
    hermite_gamma(dim).sqrt() * (modulus as f64).powf((dim as f64 - 1.0) / dim as f64)
}

/// Face-centred cubic basis, rows `(1,0,1), (1,1,0), (0,1,1)`.
pub fn fcc_basis() -> LatticeBasis {
    let rows: Vec<Vec<BigInt>> =
        [[1, 0, 1], [1, 1, 0], [0, 1, 1]].iter().map(|r| r.iter().map(|&e| BigInt::from(e)).collect()).collect();
    LatticeBasis::from_rows(&rows).expect("FCC basis is nonsingular")
}

/// Hexagonal lattice basis (row-major), unit minimal distance.
pub fn hex_basis() -> [[f64; 2]; 2] {
    [[1.0, 0.5], [0.0, 3f64.sqrt() / 2.0]]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    /// All three pairwise angles agree within `1e-9`.
    Common(f64),
    Triple([f64; 3]),
}

impl Angle {
    pub fn common(self) -> Option<f64> {
        match self {
            Angle::Common(a) => Some(a),
            Angle::Triple(_) => None,
        }
    }
}

fn angle_between(a: &ExactVector, b: &ExactVector) -> f64 {
    let dot = a.dot(b).to_f64().unwrap_or(f64::NAN);
    let na = a.norm_sq().to_f64().unwrap_or(f64::NAN).sqrt();
    let nb = b.norm_sq().to_f64().unwrap_or(f64::NAN).sqrt();
    (dot / (na * nb)).clamp(-1.0, 1.0).acos()
}

/// Angles between the column pairs (1,2), (1,3), (2,3) of a 3-D basis.
///
/// Each pair's angle is taken as the acute one, since the printed bases are
/// only defined up to per-vector sign.
pub fn rhombohedral_angle(basis: &LatticeBasis) -> Result<Angle> {
    if basis.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: basis.dim() });
    }
    let c = basis.columns();
    let acute = |x: f64| if x > PI / 2.0 { PI - x } else { x };
    let t = [acute(angle_between(&c[0], &c[1])), acute(angle_between(&c[0], &c[2])), acute(angle_between(&c[1], &c[2]))];
    if (t[0] - t[1]).abs() < 1e-9 && (t[0] - t[2]).abs() < 1e-9 {
        Ok(Angle::Common(t[0]))
    } else {
        Ok(Angle::Triple(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn cubic_family_examples() {
        let p = family_thm1(13).unwrap();
        assert_eq!(p.modulus(), 2196);
        assert_eq!(p.predicted_lambda_sq, 28731);
        let p = family_thm1(3).unwrap();
        assert_eq!((p.modulus(), p.predicted_lambda_sq), (26, 91));
        assert!(family_thm1(2).is_err());
        let p = family_thm1(100).unwrap();
        let norm = crate::svp::normalized_length(p.predicted_lambda_sq, p.modulus(), 3);
        assert!((norm - 1.0).abs() < 1e-3);
    }

    #[test]
    fn fcc_family_examples() {
        let p = family_thm2(6).unwrap();
        assert_eq!(p.modulus(), 1098);
        assert_eq!(p.predicted_lambda_sq, 72 * 183);
        let p = family_thm2(50).unwrap();
        assert_eq!(p.modulus(), 515150);
        assert_eq!(p.gen(), &[1, 101, 10201]);
        let p = family_thm2(1).unwrap();
        assert_eq!((p.modulus(), p.predicted_lambda_sq), (13, 26));
        assert!(family_thm2(0).is_err());
    }

    #[test]
    fn higher_dim_examples() {
        let p = family_thm3_4d(1).unwrap();
        assert_eq!(p.modulus(), 40);
        assert_eq!(p.predicted_lambda_sq, 260);
        assert_eq!(p.predicted_vector.as_ref().unwrap(), &ExactVector::from_slice(&[-1, -3, -9, 13]));
        assert_eq!(p.candidate_basis.det().abs(), BigInt::from(40u64.pow(3)));
        let p = family_thm3_5d(1).unwrap();
        assert_eq!(p.modulus(), 121);
        assert_eq!(p.predicted_lambda_sq, 2420);
        assert_eq!(p.predicted_vector.as_ref().unwrap(), &ExactVector::from_slice(&[-1, -3, -9, -27, 40]));
        assert_eq!(p.candidate_basis.det().abs(), BigInt::from(121u64.pow(4)));
        for k in 1..=5 {
            let p = family_thm3_4d(k).unwrap();
            assert_eq!(p.candidate_basis.det().abs(), BigInt::from(p.modulus()).pow(3));
            let p = family_thm3_5d(k).unwrap();
            assert_eq!(p.candidate_basis.det().abs(), BigInt::from(p.modulus()).pow(4));
            // 4k(k+1)(2k²+2k+1) = k + kb + kb² + kb³
            let b = 2 * k + 1;
            assert_eq!(4 * k * (k + 1) * (2 * k * k + 2 * k + 1), k * (1 + b + b * b + b * b * b));
        }
    }

    #[test]
    fn hex_start() {
        let p = family_hex2d(0).unwrap();
        assert_eq!((p.modulus(), p.gen()[1]), (8, 3));
        assert_eq!(hex_quotients(1), vec![2, 1, 2, 1, 2, 1, 2]);
        assert!(family_hex2d(40).is_err());
    }

    #[test]
    fn bound_values() {
        let hb = hermite_bound(3, 244);
        assert!((hb - 2f64.powf(1.0 / 6.0) * 244f64.powf(2.0 / 3.0)).abs() < 1e-12);
        assert!(hb > 1891f64.sqrt());
        assert!((hermite_bound(3, 1) - 2f64.powf(1.0 / 6.0)).abs() < 1e-15);
        assert!((hermite_bound(5, 77) - 2f64.powf(0.3) * 77f64.powf(0.8)).abs() < 1e-9);
        for d in 2..=5 {
            assert!((sqrt_gamma_form(d).value() - hermite_gamma(d).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn reference_lattices() {
        let fcc = fcc_basis();
        assert_eq!(fcc.det().abs(), BigInt::from(2));
        assert_eq!(crate::svp::shortest_vector(&fcc).unwrap().0, BigInt::from(2));
        let h = hex_basis();
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        assert!((det - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let second = (h[0][1].powi(2) + h[1][1].powi(2)).sqrt();
        assert!((second - 1.0).abs() < 1e-15);
    }

    #[test]
    fn angles() {
        let fcc = LatticeBasis::from_i64_columns(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert!((rhombohedral_angle(&fcc).unwrap().common().unwrap() - PI / 3.0).abs() < 1e-12);
        let ortho = LatticeBasis::identity(3);
        assert!((rhombohedral_angle(&ortho).unwrap().common().unwrap() - PI / 2.0).abs() < 1e-12);
        let b = LatticeBasis::from_i64_columns(&[&[19, 3, 39], &[3, 39, 19], &[-39, -19, -3]]).unwrap();
        let a = rhombohedral_angle(&b).unwrap().common().unwrap();
        assert!((a - 1.06572).abs() < 1e-5, "{a}");
        let skew = LatticeBasis::from_i64_columns(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(matches!(rhombohedral_angle(&skew).unwrap(), Angle::Triple(_)));
        assert!(rhombohedral_angle(&LatticeBasis::identity(2)).is_err());
    }

    #[test]
    fn ids_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.as_str().parse::<FamilyId>().unwrap(), id);
        }
        assert!("thm9".parse::<FamilyId>().is_err());
        assert_eq!(LimitConstant::power_of_two(1, 6).to_string(), "2^(1/6)");
        assert_eq!(sqrt_gamma_form(2).to_string(), "2^(1/2)*3^(-1/4)");
    }
}
