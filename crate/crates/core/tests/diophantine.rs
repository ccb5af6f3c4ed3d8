use proptest::prelude::*;

use salem_core::diophantine::{
    asymptotic_main_term, brute_force_primitive_count, brute_force_primitive_solutions,
    count_linear_nonneg, generate_primitive_solutions, lattice_count, param_primitive_count,
    partition_ratio, ConvexRegion, DiophantineTriple, LatticeVariant,
};

#[test]
fn generator_equals_brute_force_as_sets() {
    for d in [1, 2, 3, 5, 6, 7, 10, 11, 13, 15] {
        let gen = generate_primitive_solutions(d, 2000).unwrap();
        let brute = brute_force_primitive_solutions(d, 2000).unwrap();
        assert_eq!(gen, brute, "D = {d}");
    }
}

#[test]
fn every_generated_triple_is_primitive_solution() {
    for d in [1, 6, 30, 105] {
        for t in generate_primitive_solutions(d, 500).unwrap() {
            assert!(
                t.is_solution() && t.is_primitive() && t.c.unsigned_abs() <= 500,
                "{t:?}"
            );
        }
    }
}

#[test]
fn pythagorean_constant_at_d1() {
    let n = param_primitive_count(1, 100_000).unwrap() as f64;
    assert!((n / asymptotic_main_term(1, 1e5) - 1.0).abs() < 0.01);
}

#[test]
fn ellipse_sector_matches_first_family() {
    // tau = 1 family for D = 5, D1 = 1: points (u, v) with u^2 + 5 v^2 <= X, u^2 <= 5 v^2
    let region = ConvexRegion::ellipse_sector(1, 5).unwrap();
    let x = 400.0f64;
    let n = lattice_count(&region, x.sqrt(), LatticeVariant::All).unwrap();
    let mut brute = 0;
    for u in 0..=20i64 {
        for v in 0..=20i64 {
            if u * u + 5 * v * v <= 400 && u * u <= 5 * v * v {
                brute += 1;
            }
        }
    }
    assert_eq!(n, brute);
}

#[test]
fn partition_ratios_at_one_thousand() {
    for coeffs in [
        &[1u64, 1][..],
        &[2, 1],
        &[2, 2, 1],
        &[1, 1, 1],
        &[4, 2, 1],
        &[3, 1, 1],
    ] {
        let r = partition_ratio(coeffs, 1000).unwrap();
        assert!((r - 1.0).abs() <= 0.25, "{coeffs:?}: {r}");
    }
    assert_eq!(count_linear_nonneg(&[1, 1, 1], 6).unwrap(), 28u32.into());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn sign_closure(d in prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 11, 13, 15, 21, 30]), x in 0u64..300) {
        let set = generate_primitive_solutions(d, x).unwrap();
        prop_assert_eq!(param_primitive_count(d, x).unwrap(), set.len() as u64);
        for t in &set {
            for flip in [
                DiophantineTriple { a: -t.a, ..*t },
                DiophantineTriple { b: -t.b, ..*t },
                DiophantineTriple { c: -t.c, ..*t },
            ] {
                prop_assert!(set.contains(&flip));
            }
        }
        prop_assert_eq!(set.len() as u64, brute_force_primitive_count(d, x).unwrap());
    }
}
