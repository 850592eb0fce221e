use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

use modlat::exact::{det, hermite_normal_form, mod_inverse, sym_residue, unimodular_equivalent, ExactVector, LatticeBasis};
use modlat::families::hermite_gamma;
use modlat::modlat::{build_basis, build_point_set, normalize_generator, pointset_min_distance, project_2d, GeneratorSpec};
use modlat::search::{ResultCache, SearchRecord};
use modlat::svp::{minkowski_reduce, normalized_length, shortest_vector, successive_minima, svp_oracle, svp_oracle_sq};

/// Strict specs with `N ≤ max_n`, any dimension 2..=5.
fn spec_strategy(max_n: u64) -> impl Strategy<Value = GeneratorSpec> {
    (2usize..=5, 2u64..=max_n)
        .prop_flat_map(|(d, n)| (Just(n), prop::collection::vec(1..n, d)))
        .prop_filter_map("leading entry must be a unit", |(n, gen)| {
            (gen[0].gcd(&n) == 1).then(|| GeneratorSpec::strict(n, &gen).unwrap())
        })
}

fn small_basis(dim: usize) -> impl Strategy<Value = LatticeBasis> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, dim), dim)
        .prop_filter_map("singular", |cols| {
            let cols: Vec<ExactVector> = cols.iter().map(|c| ExactVector::from_slice(c)).collect();
            LatticeBasis::from_columns(cols).ok()
        })
}

/// Applies random elementary column operations, which preserve the lattice.
fn shuffle_basis(basis: &LatticeBasis, ops: &[(usize, usize, i64)]) -> LatticeBasis {
    let mut cols = basis.columns().to_vec();
    let d = cols.len();
    for &(i, j, k) in ops {
        let (i, j) = (i % d, j % d);
        if i == j {
            cols.swap(i, (i + 1) % d);
        } else {
            cols[i] = cols[i].add_scaled(&BigInt::from(k), &cols[j]);
        }
    }
    LatticeBasis::from_columns(cols).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_is_symmetric_representative(x in -10_000i128..10_000, n in 2u64..500) {
        let r = sym_residue(x, n);
        let m = n as i128;
        prop_assert!(2 * r > -m && 2 * r <= m);
        prop_assert_eq!((x - r).rem_euclid(m), 0);
    }

    #[test]
    fn inverse_round_trips(a in -5_000i128..5_000, n in 2u64..2_000) {
        match mod_inverse(a, n) {
            Ok(inv) => prop_assert_eq!((a.rem_euclid(n as i128) * inv as i128) % n as i128, 1),
            Err(_) => prop_assert_ne!(a.rem_euclid(n as i128).gcd(&(n as i128)), 1),
        }
    }

    #[test]
    fn unimodular_moves_keep_the_lattice(
        basis in (2usize..=5).prop_flat_map(small_basis),
        ops in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..12),
    ) {
        let moved = shuffle_basis(&basis, &ops);
        prop_assert_eq!(det(&moved).abs(), det(&basis).abs());
        prop_assert!(unimodular_equivalent(&basis, &moved).unwrap());
        let (a, _) = shortest_vector(&basis).unwrap();
        let (b, _) = shortest_vector(&moved).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn scaled_basis_is_a_different_lattice(basis in (2usize..=4).prop_flat_map(small_basis)) {
        let doubled: Vec<ExactVector> = basis.columns().iter().map(|c| c.scaled(&BigInt::from(2))).collect();
        let doubled = LatticeBasis::from_columns(doubled).unwrap();
        prop_assert!(!unimodular_equivalent(&basis, &doubled).unwrap());
    }

    #[test]
    fn lattice_basis_has_covolume_and_contains_points(spec in spec_strategy(60)) {
        let basis = build_basis(&spec);
        let n = BigInt::from(spec.modulus());
        prop_assert_eq!(basis.det().abs(), n.pow(spec.dim() as u32 - 1));
        for p in build_point_set(&spec).points() {
            prop_assert!(basis.contains(p));
        }
    }

    #[test]
    fn oracle_matches_pairs_and_enumeration(spec in spec_strategy(150)) {
        // two points in five dimensions sit further apart than 2·e_1
        prop_assume!(!(spec.modulus() == 2 && spec.dim() == 5));
        let oracle = svp_oracle_sq(&spec);
        let pairs = pointset_min_distance(&spec, 500).unwrap();
        let (enumerated, _) = shortest_vector(&build_basis(&spec)).unwrap();
        prop_assert_eq!(oracle, pairs);
        prop_assert_eq!(enumerated.to_u128(), Some(oracle));
        let (_, vector) = svp_oracle(&spec);
        prop_assert!(build_basis(&spec).contains(&vector));
        prop_assert_eq!(vector.norm_sq().to_u128(), Some(oracle));
    }

    #[test]
    fn permuting_coordinates_keeps_lambda(spec in spec_strategy(200), seed in any::<u64>()) {
        let mut gen = spec.gen().to_vec();
        let d = gen.len();
        gen.rotate_left((seed as usize) % d);
        gen.swap(0, (seed as usize / 7) % d);
        let permuted = GeneratorSpec::relaxed(spec.modulus(), &gen).unwrap();
        prop_assert_eq!(svp_oracle_sq(&permuted), svp_oracle_sq(&spec));
    }

    #[test]
    fn unit_multiples_and_normalisation_keep_lambda(spec in spec_strategy(200), pick in any::<u64>()) {
        let n = spec.modulus();
        let us: Vec<u64> = (1..n).filter(|u| u.gcd(&n) == 1).collect();
        let u = us[(pick as usize) % us.len()];
        let scaled: Vec<u64> = spec.gen().iter().map(|&a| (a * u) % n).collect();
        let scaled = GeneratorSpec::strict(n, &scaled).unwrap();
        let lambda = svp_oracle_sq(&spec);
        prop_assert_eq!(svp_oracle_sq(&scaled), lambda);
        let normal = normalize_generator(&scaled).unwrap();
        prop_assert_eq!(normal.gen()[0], 1);
        prop_assert_eq!(svp_oracle_sq(&normal), lambda);
    }

    #[test]
    fn reduction_is_sound(spec in spec_strategy(120)) {
        let basis = build_basis(&spec);
        let report = minkowski_reduce(&basis).unwrap();
        prop_assert!(report.certified);
        prop_assert!(unimodular_equivalent(&basis, &report.reduced_basis).unwrap());
        let norms: Vec<BigInt> = report.reduced_basis.columns().iter().map(ExactVector::norm_sq).collect();
        prop_assert!(norms.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(&report.lambda1_sq, &norms[0]);
        let minima = successive_minima(&basis).unwrap();
        prop_assert_eq!(&minima, &report.successive_minima_sq);
        prop_assert!(minima.iter().zip(&norms).all(|(m, n)| m <= n));
    }

    #[test]
    fn hermite_bound_holds(spec in spec_strategy(400)) {
        let d = spec.dim();
        let norm = normalized_length(svp_oracle_sq(&spec), spec.modulus(), d);
        prop_assert!(norm <= hermite_gamma(d).sqrt() + 1e-12);
    }

    #[test]
    fn projection_is_image_of_lattice(spec in spec_strategy(300), i in 0usize..5, j in 0usize..5) {
        let d = spec.dim();
        let (i, j) = (i % d, j % d);
        prop_assume!(i != j);
        let proj = project_2d(&spec, (i, j)).unwrap();
        let n = spec.modulus();
        let gens = [
            ExactVector::from_slice(&[spec.gen()[i], spec.gen()[j]]),
            ExactVector::from_slice(&[n, 0]),
            ExactVector::from_slice(&[0, n]),
        ];
        let expected = hermite_normal_form(&gens).unwrap();
        prop_assert!(unimodular_equivalent(&proj, &expected).unwrap());
        for p in build_point_set(&spec).points().iter().take(40) {
            let q = ExactVector::new(vec![p.entries()[i].clone(), p.entries()[j].clone()]).unwrap();
            prop_assert!(proj.contains(&q));
        }
    }

    #[test]
    fn hnf_spans_its_generators(cols in prop::collection::vec(prop::collection::vec(-30i64..=30, 3), 1..5), m in 1i64..40) {
        let mut gens: Vec<ExactVector> = cols.iter().map(|c| ExactVector::from_slice(c)).collect();
        gens.extend((0..3).map(|i| ExactVector::axis(3, i, m)));
        let h = hermite_normal_form(&gens).unwrap();
        for g in &gens {
            prop_assert!(h.contains(g));
        }
        prop_assert!(h.det().is_positive());
        prop_assert!((BigInt::from(m).pow(3) % h.det()) == BigInt::from(0));
    }

    #[test]
    fn cache_round_trips(n in 4u64..100_000, l in any::<u64>(), gen in prop::collection::vec(1u64..1000, 3), relaxed: bool) {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path().join("c.jsonl"));
        let rec = SearchRecord {
            modulus: n,
            dim: 3,
            best_gen: gen,
            lambda_sq: l as u128 * 1_000_003,
            normalized: l as f64 / 7.0,
            relaxed,
            candidates_scanned: l / 3,
        };
        cache.put(&rec).unwrap();
        prop_assert_eq!(cache.get(n, 3, relaxed).unwrap(), Some(rec));
        prop_assert_eq!(cache.get(n, 3, !relaxed).unwrap(), None);
    }
}

#[test]
fn two_point_set_in_five_dimensions_is_the_only_gap() {
    let spec = GeneratorSpec::strict(2, &[1, 1, 1, 1, 1]).unwrap();
    assert_eq!(svp_oracle_sq(&spec), 4);
    assert_eq!(pointset_min_distance(&spec, 10).unwrap(), 5);
    let four = GeneratorSpec::strict(2, &[1, 1, 1, 1]).unwrap();
    assert_eq!(svp_oracle_sq(&four), pointset_min_distance(&four, 10).unwrap());
}
