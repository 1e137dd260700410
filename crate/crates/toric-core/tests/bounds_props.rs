//! Algebraic laws of the triple intersection form on randomized divisors:
//! symmetry, multilinearity and invariance under linear equivalence, plus
//! the closed-form degree bound on projective space.

mod common;

use common::{fixtures, nef_combo, Fixture};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_core::bounds::{projectively_normal_bound, triple_intersection, QDivisor};
use toric_core::lattice::{int, rat, vec_dot, Int, Rat};
use toric_core::toric::ToricDivisor;

fn random_nef(rng: &mut ChaCha8Rng, fx: &Fixture) -> ToricDivisor {
    let coeffs: Vec<i64> = (0..fx.nef_generators.len()).map(|_| rng.gen_range(0..=3)).collect();
    nef_combo(fx, &coeffs)
}

/// The divisor of a character: coefficients pair the exponent against
/// each ray. Adding it moves within a linear equivalence class.
fn principal(fx: &Fixture, u: &[i64]) -> ToricDivisor {
    let u: Vec<Int> = u.iter().map(|&c| int(c)).collect();
    let coeffs: Vec<Int> = fx.fan.rays().iter().map(|v| vec_dot(v, &u)).collect();
    ToricDivisor::new(&fx.fan, coeffs)
}

#[test]
fn triple_intersection_laws_hold_on_random_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x746f726963);
    let all = fixtures();
    let mut cases = 0;
    while cases < 200 {
        let fx = &all[rng.gen_range(0..all.len())];
        let ample = Some(&fx.ample);
        let d1 = random_nef(&mut rng, fx);
        let d2 = random_nef(&mut rng, fx);
        let d3 = random_nef(&mut rng, fx);
        let base = triple_intersection(&d1, &d2, &d3, ample).unwrap();

        for (a, b, c) in [(&d1, &d3, &d2), (&d2, &d1, &d3), (&d3, &d2, &d1)] {
            assert_eq!(base, triple_intersection(a, b, c, ample).unwrap(), "{}", fx.name);
        }

        let extra = random_nef(&mut rng, fx);
        let left = triple_intersection(&(&d1 + &extra), &d2, &d3, ample).unwrap();
        let right = &base + &triple_intersection(&extra, &d2, &d3, ample).unwrap();
        assert_eq!(left, right, "{}: multilinearity", fx.name);

        let u: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let moved = &d1 + &principal(fx, &u);
        assert!(moved.is_linearly_equivalent(&d1));
        let shifted = triple_intersection(&moved, &d2, &d3, ample).unwrap();
        assert_eq!(base, shifted, "{}: equivalence invariance", fx.name);

        cases += 1;
    }
}

/// Degree `d` surfaces in projective space: a degree `e` curve on a very
/// general member has genus at least `(d - 5) e / 2 + 1`.
#[test]
fn classic_degree_bound_on_projective_space() {
    let all = fixtures();
    let h = &all[0].nef_generators[0];
    for d in 2i64..=9 {
        let config = projectively_normal_bound(h, &int(d)).unwrap();
        for e in 1i64..=5 {
            // Pairing against the hyperplane scales by d, so dividing by
            // it normalizes the class to degree e.
            let curve = QDivisor::new(h.scale(&int(e)), int(d));
            let bound = config.genus_lower_bound(&curve, Some(h)).unwrap();
            let expected = rat(1, 1) + rat((d - 5) * e, 2);
            assert_eq!(bound, expected, "d={} e={}", d, e);
        }
    }
}

/// The two evaluation paths agree where both apply: nef inputs need no
/// reference, and supplying one anyway must not change the number.
#[test]
fn reference_divisor_does_not_disturb_nef_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let all = fixtures();
    for _ in 0..25 {
        let fx = &all[rng.gen_range(0..all.len())];
        let d1 = random_nef(&mut rng, fx);
        let d2 = random_nef(&mut rng, fx);
        let d3 = random_nef(&mut rng, fx);
        let plain = triple_intersection(&d1, &d2, &d3, None).unwrap();
        let reffed = triple_intersection(&d1, &d2, &d3, Some(&fx.ample)).unwrap();
        assert_eq!(plain, reffed, "{}", fx.name);
    }
}

/// Intersection numbers of integral divisors are integers even though the
/// computation runs through rational volumes.
#[test]
fn triple_intersections_are_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let all = fixtures();
    for _ in 0..40 {
        let fx = &all[rng.gen_range(0..all.len())];
        let d1 = random_nef(&mut rng, fx);
        let d2 = random_nef(&mut rng, fx);
        let d3 = random_nef(&mut rng, fx);
        let value: Rat = triple_intersection(&d1, &d2, &d3, None).unwrap();
        assert!(value.is_integer(), "{}: {}", fx.name, value);
    }
}
