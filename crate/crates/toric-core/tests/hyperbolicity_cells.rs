//! Certification sweeps over the published parameter grids of every
//! built-in family, plus soundness checks tying the certified ratio to
//! arbitrary curve classes in the cone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_core::bounds::{triple_intersection, QDivisor};
use toric_core::hyperbolicity::families::{by_name, certified_region_mismatches, sweep, Params};
use toric_core::hyperbolicity::{certify, Verdict};
use toric_core::lattice::{rat, Rat};
use toric_core::toric::ToricDivisor;

fn no_params() -> Params {
    Params::new()
}

fn range(name: &str, lo: i64, hi: i64) -> (String, i64, i64) {
    (String::from(name), lo, hi)
}

fn epsilon(verdict: &Verdict) -> Rat {
    match verdict {
        Verdict::Certified { epsilon, .. } => epsilon.clone(),
        other => panic!("expected certification, got {:?}", other),
    }
}

/// Every cell of the published grids lands on the correct side of the
/// certified region, for all five families.
#[test]
fn published_regions_hold_across_full_grids() {
    let grids: &[(&str, &[(&str, i64)], &[(&str, i64, i64)])] = &[
        ("p3", &[], &[("a", 1, 8)]),
        ("p2xp1", &[], &[("a", 1, 10), ("b", 1, 10)]),
        ("blp3", &[], &[("a", 1, 9), ("b", 0, 9)]),
        ("p1cubed", &[], &[("a", 1, 8), ("b", 1, 8), ("c", 1, 8)]),
        ("wps", &[("n", 2)], &[("m", 1, 8)]),
        ("wps", &[("n", 3)], &[("m", 1, 8)]),
    ];
    for (name, fixed, ranges) in grids {
        let family = by_name(name).unwrap();
        let fixed: Params = fixed.iter().map(|(k, v)| (String::from(*k), *v)).collect();
        let ranges: Vec<_> = ranges.iter().map(|(n, lo, hi)| range(n, *lo, *hi)).collect();
        let cells = sweep(&family, &fixed, &ranges).unwrap();
        let expected: usize = ranges.iter().map(|(_, lo, hi)| (hi - lo + 1) as usize).product();
        assert_eq!(cells.len(), expected, "{}", name);
        let mismatches = certified_region_mismatches(&family, &cells).unwrap();
        assert!(mismatches.is_empty(), "{}: {:?}", name, mismatches);
    }
}

/// Raising the surface degree loosens the worst ratio: epsilon is
/// strictly increasing along the certified tail of each family line.
#[test]
fn certified_epsilon_grows_with_degree() {
    let p3 = by_name("p3").unwrap();
    let cells = sweep(&p3, &no_params(), &[range("a", 6, 10)]).unwrap();
    let eps: Vec<Rat> = cells.iter().map(|c| epsilon(&c.verdict)).collect();
    assert!(eps.windows(2).all(|w| w[0] < w[1]), "{:?}", eps);
    assert_eq!(eps[0], rat(1, 1));

    let p2xp1 = by_name("p2xp1").unwrap();
    let fixed: Params = [(String::from("b"), 3)].into_iter().collect();
    let cells = sweep(&p2xp1, &fixed, &[range("a", 5, 8)]).unwrap();
    let eps: Vec<Rat> = cells.iter().map(|c| epsilon(&c.verdict)).collect();
    assert!(eps.windows(2).all(|w| w[0] < w[1]), "{:?}", eps);
    assert_eq!(eps[0], rat(3, 8));
}

/// The certificate only inspects the extreme rays of the curve cone, but
/// its ratio must bound every class inside: interior points inherit the
/// inequality from the mediant property of the ray ratios.
#[test]
fn cone_points_respect_the_certified_ratio() {
    let family = by_name("p2xp1").unwrap();
    let params: Params =
        [(String::from("a"), 5), (String::from("b"), 3)].into_iter().collect();
    let problem = family.build(&params).unwrap();
    let eps = epsilon(&certify(&problem));
    assert_eq!(eps, rat(3, 8));

    let verified = problem.config.verify().unwrap();
    let d = verified.surface().clone();
    let fan = d.fan().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x636f6e65);
    let mut tested = 0;
    while tested < 50 {
        let x = rng.gen_range(0..=6i64);
        let y = rng.gen_range(0..=6i64);
        if x == 0 && y == 0 {
            continue;
        }
        let curve = ToricDivisor::from_i64(&fan, &[x, 0, 0, y, 0]);
        let excess = verified
            .curve_pairings(&QDivisor::integral(curve.clone()), problem.ample.as_ref())
            .unwrap()
            .into_iter()
            .min()
            .unwrap();
        let degree =
            triple_intersection(&d, &curve, &problem.polarization, problem.ample.as_ref())
                .unwrap();
        assert!(degree > rat(0, 1), "x={} y={}", x, y);
        assert!(excess >= eps.clone() * degree, "x={} y={}", x, y);
        tested += 1;
    }
}

/// The ratio compares excess to degree, so measuring degrees against a
/// doubled polarization halves epsilon exactly.
#[test]
fn doubling_the_polarization_halves_epsilon() {
    let family = by_name("p3").unwrap();
    let params: Params = [(String::from("a"), 6)].into_iter().collect();
    let mut problem = family.build(&params).unwrap();
    let base = epsilon(&certify(&problem));
    problem.polarization = problem.polarization.scale(&toric_core::lattice::int(2));
    let halved = epsilon(&certify(&problem));
    assert_eq!(halved * rat(2, 1), base);
}
