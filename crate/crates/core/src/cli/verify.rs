//! Self-check suites run by the `verify` subcommand.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact::{gcd_all, sym_residue, unimodular_equivalent};
use crate::families::{family_point, hermite_gamma, FamilyId};
use crate::modlat::{build_basis, pointset_min_distance, GeneratorSpec, DEFAULT_PAIR_CAP};
use crate::svp::{minkowski_reduce, normalized_length, shortest_vector, svp_oracle, svp_oracle_sq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    Quick,
    Full,
}

/// Replaceable primitives, so a planted fault can be shown to be caught.
#[derive(Clone, Copy)]
pub struct VerifyHooks {
    pub residue: fn(i128, u64) -> i128,
}

impl Default for VerifyHooks {
    fn default() -> Self {
        Self { residue: sym_residue }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub passed: bool,
    pub detail: String,
}

const SEED: u64 = 0x6d6f_646c_6174;

/// A strict spec with dimension in `2..=5` and `2 ≤ N ≤ max_modulus`.
pub fn random_spec<R: Rng>(rng: &mut R, max_modulus: u64) -> GeneratorSpec {
    let dim = rng.gen_range(2..=5);
    let n = rng.gen_range(2..=max_modulus);
    loop {
        let gen: Vec<u64> = (0..dim).map(|_| rng.gen_range(1..n)).collect();
        if gcd_all(&[n, gen[0]]) == 1 {
            return GeneratorSpec::strict(n, &gen).expect("sampled spec is valid");
        }
    }
}

fn check(name: &'static str, cases: usize, failures: Vec<String>) -> CheckResult {
    CheckResult {
        name,
        cases,
        passed: failures.is_empty(),
        detail: failures.into_iter().take(3).collect::<Vec<_>>().join("; "),
    }
}

fn residue_check(hooks: &VerifyHooks) -> CheckResult {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 2u64..=97 {
        let m = n as i128;
        for x in -3 * m..=3 * m {
            cases += 1;
            let r = (hooks.residue)(x, n);
            if !(2 * r > -m && 2 * r <= m && (x - r).rem_euclid(m) == 0) {
                failures.push(format!("residue({x}, {n}) = {r}"));
            }
        }
    }
    check("symmetric_residue", cases, failures)
}

/// Coset scan driven by the hooked residue, independent of the library oracle.
fn hooked_oracle(spec: &GeneratorSpec, hooks: &VerifyHooks) -> u128 {
    let n = spec.modulus();
    let mut best = (n as u128) * (n as u128);
    for k in 1..=n / 2 {
        let s: u128 = spec.gen().iter().map(|&a| ((hooks.residue)(k as i128 * a as i128, n)).pow(2) as u128).sum();
        best = best.min(s);
    }
    best
}

fn random_lattice_checks(count: usize, max_modulus: u64, hooks: &VerifyHooks) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut equiv = Vec::new();
    let mut reduced = Vec::new();
    let mut bound = Vec::new();
    for _ in 0..count {
        let spec = random_spec(&mut rng, max_modulus);
        let oracle = svp_oracle_sq(&spec);
        let hooked = hooked_oracle(&spec, hooks);
        let (enum_sq, _) = shortest_vector(&build_basis(&spec))?;
        let pairs = pointset_min_distance(&spec, DEFAULT_PAIR_CAP)?;
        let label = format!("N={} v={:?}", spec.modulus(), spec.gen());
        if enum_sq.to_u128() != Some(oracle) || hooked != oracle || pairs != oracle {
            equiv.push(format!("{label}: oracle {oracle}, hooked {hooked}, enumeration {enum_sq}, pairs {pairs}"));
        }
        let report = minkowski_reduce(&build_basis(&spec))?;
        if !report.certified || report.lambda1_sq != BigInt::from(oracle) {
            reduced.push(format!("{label}: certified {} lambda {}", report.certified, report.lambda1_sq));
        }
        let d = spec.dim();
        if normalized_length(oracle, spec.modulus(), d) > hermite_gamma(d).sqrt() + 1e-12 {
            bound.push(label);
        }
    }
    Ok(vec![
        check("oracle_equivalence", count, equiv),
        check("reducedness_certificate", count, reduced),
        check("hermite_bound", count, bound),
    ])
}

fn golden_check() -> Result<CheckResult> {
    let spec = GeneratorSpec::strict(244, &[1, 13, 169])?;
    let (l, _) = svp_oracle(&spec);
    let mut failures = Vec::new();
    if l != 1891 {
        failures.push(format!("N=244 lambda_sq {l}"));
    }
    Ok(check("golden_244", 1, failures))
}

fn family_check(name: &'static str, id: FamilyId, params: std::ops::RangeInclusive<u64>, certify: bool) -> Result<CheckResult> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for p in params {
        cases += 1;
        let point = family_point(id, p)?;
        let (measured, vector) = svp_oracle(&point.spec);
        if measured != point.predicted_lambda_sq {
            failures.push(format!("{id} {p}: measured {measured} predicted {}", point.predicted_lambda_sq));
        }
        if let Some(pv) = &point.predicted_vector {
            if pv.canonical().norm_sq() != vector.norm_sq() {
                failures.push(format!("{id} {p}: vector {vector} vs {pv}"));
            }
        }
        if certify {
            let basis = &point.candidate_basis;
            let ok = crate::svp::is_minkowski_reduced(basis)? && unimodular_equivalent(basis, &build_basis(&point.spec))?;
            if !ok {
                failures.push(format!("{id} {p}: candidate basis not certified"));
            }
        }
    }
    Ok(check(name, cases, failures))
}

/// Runs the chosen suite; every check is reported even after a failure.
pub fn run_verify(scope: Scope, hooks: &VerifyHooks) -> Result<Vec<CheckResult>> {
    let mut out = vec![residue_check(hooks), golden_check()?];
    let (count, max_n) = match scope {
        Scope::Quick => (60, 120),
        Scope::Full => (500, 500),
    };
    out.extend(random_lattice_checks(count, max_n, hooks)?);
    if scope == Scope::Full {
        out.push(family_check("thm1_cubic", FamilyId::Thm1Cubic, 3..=20, true)?);
        out.push(family_check("thm2_fcc3d", FamilyId::Thm2Fcc3d, 1..=31, true)?);
        out.push(family_check("thm3_4d", FamilyId::Thm3FourD, 1..=6, true)?);
        out.push(family_check("thm3_5d", FamilyId::Thm3FiveD, 1..=4, true)?);
    }
    Ok(out)
}
