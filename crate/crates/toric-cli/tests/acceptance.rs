//! Acceptance gate for the workspace: eight end-to-end checks covering
//! intersection tables, closed-form genus bounds, boundary genera,
//! certified regions, section graphs, the volume oracle, the algebraic
//! law suites, and power configurations. One line per check; nonzero
//! exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_core::bounds::{
    boundary_curve_genus, projectively_normal_bound, triple_intersection, BoundaryCurveError,
    QDivisor,
};
use toric_core::hyperbolicity::families::{self, Params};
use toric_core::lattice::{int, ivec, rat, Int, Rat};
use toric_core::polytope::PolytopeError;
use toric_core::sections::{alcoved_fan_check, has_connected_sections, is_idp, SectionGraph};
use toric_core::toric::{Fan, ToricDivisor};

use std::sync::Arc;

use toric::formats::{load_divisor, load_fan};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

fn loaded_fan(rel: &str) -> Result<Arc<Fan>, String> {
    load_fan(&fixture(rel)).map_err(|e| format!("{}: {}", rel, e))
}

fn loaded_divisor(rel: &str) -> Result<ToricDivisor, String> {
    load_divisor(&fixture(rel)).map_err(|e| format!("{}: {}", rel, e))
}

fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn family_config(name: &str, point: &[(&str, i64)]) -> Result<(families::Family, toric_core::hyperbolicity::Problem), String> {
    let family = families::by_name(name).map_err(|e| e.to_string())?;
    let problem = family.build(&params(point)).map_err(|e| e.to_string())?;
    Ok((family, problem))
}

/// Fixture fans with nef cone generators and an ample reference, loaded
/// from the on-disk fan files.
struct RandomFamily {
    name: &'static str,
    fan: Arc<Fan>,
    gens: Vec<ToricDivisor>,
    ample: ToricDivisor,
}

fn random_families() -> Result<Vec<RandomFamily>, String> {
    let specs: [(&'static str, &'static str, &'static [&'static [i64]], &'static [i64]); 5] = [
        ("p3", "fans/p3.json", &[&[0, 0, 0, 1]], &[0, 0, 0, 1]),
        ("p2xp1", "fans/p2xp1.json", &[&[1, 0, 0, 0, 0], &[0, 0, 0, 1, 0]], &[1, 0, 0, 1, 0]),
        (
            "p1cubed",
            "fans/p1cubed.json",
            &[&[1, 0, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 0, 1, 0]],
            &[1, 0, 1, 0, 1, 0],
        ),
        ("blp3", "fans/blp3.json", &[&[0, 0, 0, 1, 0], &[1, 0, 0, 0, 0]], &[0, 0, 0, 2, -1]),
        (
            "wps2",
            "fans/wps2-resolved.json",
            &[&[0, 0, 0, 1, 0], &[0, 0, 0, 2, 1]],
            &[0, 0, 0, 3, 1],
        ),
    ];
    let mut out = Vec::new();
    for (name, path, gens, ample) in specs {
        let fan = loaded_fan(path)?;
        let gens: Vec<ToricDivisor> =
            gens.iter().map(|c| ToricDivisor::from_i64(&fan, c)).collect();
        let ample = ToricDivisor::from_i64(&fan, ample);
        for (i, g) in gens.iter().enumerate() {
            ensure!(g.is_nef(), "{}: generator {} not nef", name, i);
        }
        ensure!(ample.is_ample(), "{}: reference not ample", name);
        out.push(RandomFamily { name, fan, gens, ample });
    }
    Ok(out)
}

fn nef_combo(fx: &RandomFamily, coeffs: &[i64]) -> ToricDivisor {
    let mut d = ToricDivisor::zero(&fx.fan);
    for (g, c) in fx.gens.iter().zip(coeffs) {
        d = &d + &g.scale(&int(*c));
    }
    d
}

/// Divisor of a character: coefficients `<u, v>` over the rays. Linearly
/// trivial, so adding it must not change intersection numbers.
fn principal(fx: &RandomFamily, u: &[i64]) -> ToricDivisor {
    let coeffs = fx
        .fan
        .rays()
        .iter()
        .map(|v| {
            v.iter().zip(u).map(|(vc, uc)| vc * Int::from(*uc)).sum::<Int>()
        })
        .collect();
    ToricDivisor::new(&fx.fan, coeffs)
}

/// Intersection table on the blowup of projective space at a point:
/// `H^3 = E^3 = 1` and the mixed products vanish.
fn blowup_intersection_table() -> Result<(), String> {
    let h = loaded_divisor("divisors/blp3-h.json")?;
    let e = loaded_divisor("divisors/blp3-e.json")?;
    let pol = loaded_divisor("divisors/blp3-pol.json")?;
    let table: [(&ToricDivisor, &ToricDivisor, &ToricDivisor, i64); 4] = [
        (&h, &h, &h, 1),
        (&h, &h, &e, 0),
        (&h, &e, &e, 0),
        (&e, &e, &e, 1),
    ];
    for (d1, d2, d3, expect) in table {
        let got = triple_intersection(d1, d2, d3, Some(&pol)).map_err(|e| e.to_string())?;
        ensure!(got == rat(expect, 1), "expected {}, got {}", expect, got);
    }
    Ok(())
}

/// Engine genus bounds against the closed forms of the three product and
/// blowup families: `2g - 2` agrees as an exact integer on the full grid
/// of surface degrees 2..=8 and curve coordinates 0..=3.
fn closed_form_genus_bounds() -> Result<(), String> {
    let two = Rat::from_integer(int(2));

    let family = families::by_name("p2xp1").map_err(|e| e.to_string())?;
    for a in 2i64..=8 {
        for b in 2i64..=8 {
            let problem =
                family.build(&params(&[("a", a), ("b", b)])).map_err(|e| e.to_string())?;
            let vc = problem.config.verify().map_err(|e| e.to_string())?;
            for c in 0i64..=3 {
                for d in 0i64..=3 {
                    let curve = ToricDivisor::from_i64(problem.surface().fan(), &[c, 0, 0, d, 0]);
                    let g = vc
                        .genus_lower_bound(&QDivisor::integral(curve), problem.ample.as_ref())
                        .map_err(|e| e.to_string())?;
                    let expect = c * (a * (b - 3) + (a - 4) * b) + d * a * (a - 4);
                    let got = (g - rat(1, 1)) * two.clone();
                    ensure!(
                        got == rat(expect, 1),
                        "p2xp1 ({},{}) curve ({},{}): 2g-2 = {}, expected {}",
                        a, b, c, d, got, expect
                    );
                }
            }
        }
    }

    let family = families::by_name("p1cubed").map_err(|e| e.to_string())?;
    for a in 2i64..=8 {
        for b in 2i64..=8 {
            for c in 2i64..=8 {
                let problem = family
                    .build(&params(&[("a", a), ("b", b), ("c", c)]))
                    .map_err(|e| e.to_string())?;
                let vc = problem.config.verify().map_err(|e| e.to_string())?;
                for d in 0i64..=3 {
                    for e in 0i64..=3 {
                        for f in 0i64..=3 {
                            let curve = ToricDivisor::from_i64(
                                problem.surface().fan(),
                                &[d, 0, e, 0, f, 0],
                            );
                            let g = vc
                                .genus_lower_bound(&QDivisor::integral(curve), problem.ample.as_ref())
                                .map_err(|e| e.to_string())?;
                            let expect = d * (b * (c - 3) + (b - 3) * c)
                                + e * (a * (c - 3) + (a - 3) * c)
                                + f * (a * (b - 3) + (a - 3) * b);
                            let got = (g - rat(1, 1)) * two.clone();
                            ensure!(
                                got == rat(expect, 1),
                                "p1cubed ({},{},{}) curve ({},{},{}): 2g-2 = {}, expected {}",
                                a, b, c, d, e, f, got, expect
                            );
                        }
                    }
                }
            }
        }
    }

    let family = families::by_name("blp3").map_err(|e| e.to_string())?;
    for a in 2i64..=8 {
        for b in 2i64..=8 {
            let problem =
                family.build(&params(&[("a", a), ("b", b)])).map_err(|e| e.to_string())?;
            let vc = problem.config.verify().map_err(|e| e.to_string())?;
            for c in 0i64..=3 {
                for d in 0i64..=3 {
                    let curve = ToricDivisor::from_i64(problem.surface().fan(), &[0, c, 0, 0, d]);
                    let g = vc
                        .genus_lower_bound(&QDivisor::integral(curve), problem.ample.as_ref())
                        .map_err(|e| e.to_string())?;
                    let expect = c * (a * (a - 3) + a * (b - 2) + b * (a - 3)) + d * b * (b - 2);
                    let got = (g - rat(1, 1)) * two.clone();
                    ensure!(
                        got == rat(expect, 1),
                        "blp3 ({},{}) curve ({},{}): 2g-2 = {}, expected {}",
                        a, b, c, d, got, expect
                    );
                }
            }
        }
    }
    Ok(())
}

/// Boundary curve genera across all four fixture families: the count of
/// interior facet points matches the classical genus formulas for curves
/// in the torus-invariant surfaces.
fn boundary_genus_formulas() -> Result<(), String> {
    let check = |d: &ToricDivisor, ray: usize, expect: i64, what: &str| -> Result<(), String> {
        let got = boundary_curve_genus(d, ray).map_err(|e| format!("{} ray {}: {}", what, ray, e))?;
        ensure!(got == int(expect), "{} ray {}: genus {}, expected {}", what, ray, got, expect);
        Ok(())
    };

    for a in 1i64..=8 {
        for b in 1i64..=8 {
            let (_, problem) = family_config("p2xp1", &[("a", a), ("b", b)])?;
            let d = problem.surface();
            for ray in 0..3 {
                check(d, ray, (a - 1) * (b - 1), &format!("p2xp1 ({},{})", a, b))?;
            }
            for ray in 3..5 {
                check(d, ray, (a - 1) * (a - 2) / 2, &format!("p2xp1 ({},{})", a, b))?;
            }
        }
    }

    for a in 1i64..=8 {
        for b in 1i64..=8 {
            for c in 1i64..=8 {
                let (_, problem) = family_config("p1cubed", &[("a", a), ("b", b), ("c", c)])?;
                let d = problem.surface();
                let what = format!("p1cubed ({},{},{})", a, b, c);
                for (rays, expect) in [
                    ([0usize, 1], (b - 1) * (c - 1)),
                    ([2, 3], (a - 1) * (c - 1)),
                    ([4, 5], (a - 1) * (b - 1)),
                ] {
                    for ray in rays {
                        check(d, ray, expect, &what)?;
                    }
                }
            }
        }
    }

    for a in 1i64..=8 {
        for b in 1i64..=8 {
            let (_, problem) = family_config("blp3", &[("a", a), ("b", b)])?;
            let d = problem.surface();
            let what = format!("blp3 ({},{})", a, b);
            let s = a + b;
            for ray in 0..3 {
                check(d, ray, ((s - 1) * (s - 2) - b * (b - 1)) / 2, &what)?;
            }
            check(d, 3, (s - 1) * (s - 2) / 2, &what)?;
            check(d, 4, (b - 1) * (b - 2) / 2, &what)?;
        }
    }

    for n in 2i64..=8 {
        for m in 1i64..=8 {
            let (_, problem) = family_config("wps", &[("n", n), ("m", m)])?;
            let d = problem.surface();
            let what = format!("wps ({},{})", n, m);
            for ray in [0usize, 1, 3] {
                check(d, ray, (m - 1) * (n * m - 2) / 2, &what)?;
            }
            check(d, 2, (n * m - 1) * (n * m - 2) / 2, &what)?;
            match boundary_curve_genus(d, 4) {
                Err(BoundaryCurveError::NoFacetForRay { ray: 4 }) => {}
                other => {
                    return Err(format!("{} ray 4: expected no facet, got {:?}", what, other))
                }
            }
        }
    }
    Ok(())
}

/// Certified regions of all five families: sweeps agree byte for byte
/// with the frozen CSVs, and the published region predicates match the
/// verdicts in both directions on every cell.
fn certified_region_reproduction() -> Result<(), String> {
    let sweeps: [(&str, &[&str], &str); 5] = [
        ("p2xp1", &["sweep", "p2xp1", "--range", "a=1..10,b=1..10"], include_str!("golden/p2xp1.csv")),
        ("blp3", &["sweep", "blp3", "--range", "a=1..9,b=0..9"], include_str!("golden/blp3.csv")),
        (
            "p1cubed",
            &["sweep", "p1cubed", "--range", "a=1..8,b=1..8,c=1..8"],
            include_str!("golden/p1cubed.csv"),
        ),
        ("wps n=2", &["sweep", "wps", "--params", "n=2", "--range", "m=1..8"], include_str!("golden/wps2.csv")),
        ("wps n=3", &["sweep", "wps", "--params", "n=3", "--range", "m=1..8"], include_str!("golden/wps3.csv")),
    ];
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, (label, args, golden)) in sweeps.iter().enumerate() {
        let path = dir.path().join(format!("sweep-{}.csv", i));
        let out = Command::new(env!("CARGO_BIN_EXE_toric"))
            .args(*args)
            .arg("--csv")
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(out.status.success(), "{}: sweep failed: {}", label, String::from_utf8_lossy(&out.stderr));
        let fresh = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        ensure!(fresh == *golden, "{}: sweep differs from the frozen CSV", label);
    }

    let grids: [(&str, &[(&str, i64)], &[(&str, i64, i64)]); 5] = [
        ("p2xp1", &[], &[("a", 1, 10), ("b", 1, 10)]),
        ("blp3", &[], &[("a", 1, 9), ("b", 0, 9)]),
        ("p1cubed", &[], &[("a", 1, 8), ("b", 1, 8), ("c", 1, 8)]),
        ("wps", &[("n", 2)], &[("m", 1, 8)]),
        ("wps", &[("n", 3)], &[("m", 1, 8)]),
    ];
    for (name, fixed, ranges) in grids {
        let family = families::by_name(name).map_err(|e| e.to_string())?;
        let ranges: Vec<(String, i64, i64)> =
            ranges.iter().map(|(n, lo, hi)| (n.to_string(), *lo, *hi)).collect();
        let cells =
            families::sweep(&family, &params(fixed), &ranges).map_err(|e| e.to_string())?;
        let expected: usize = ranges.iter().map(|(_, lo, hi)| (hi - lo + 1) as usize).product();
        ensure!(cells.len() == expected, "{}: {} cells, expected {}", name, cells.len(), expected);
        let mismatches =
            families::certified_region_mismatches(&family, &cells).map_err(|e| e.to_string())?;
        ensure!(
            mismatches.is_empty(),
            "{}: published region disagrees with verdicts at {:?}",
            name,
            mismatches
        );
    }
    Ok(())
}

/// Two-block section graph on a product of two lines: seven vertices and
/// connected, while each block alone induces a disconnected graph.
fn two_block_section_graph() -> Result<(), String> {
    let fan = Fan::new(
        2,
        vec![ivec(&[1, 0]), ivec(&[-1, 0]), ivec(&[0, 1]), ivec(&[0, -1])],
        vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
    )
    .map_err(|e| format!("{:?}", e))?;
    let d = ToricDivisor::from_i64(&fan, &[0, 2, 0, 1]);
    let e1 = ToricDivisor::from_i64(&fan, &[0, 1, 0, 1]);
    let e2 = ToricDivisor::from_i64(&fan, &[0, 2, 0, 0]);

    let graph = SectionGraph::new(&d, &[e1.clone(), e2.clone()]);
    ensure!(graph.vertex_count() == 7, "vertex count {}, expected 7", graph.vertex_count());
    ensure!(graph.is_connected(), "two-block graph should be connected");
    let report = has_connected_sections(&d, &[e1.clone(), e2.clone()]);
    ensure!(report.holds(), "two-block configuration should hold: {}", report);

    for (label, e) in [("square block", &e1), ("segment block", &e2)] {
        let single = has_connected_sections(&d, std::slice::from_ref(e));
        ensure!(!single.graph_connected(), "{} alone should disconnect", label);
    }
    Ok(())
}

/// Euclidean volume against the volume interpolated from lattice point
/// counts of the first dilates: exact agreement on every divisor fixture
/// and on 100 randomized nef divisors.
fn volume_oracle() -> Result<(), String> {
    for rel in [
        "divisors/p3-h.json",
        "divisors/p3-4h.json",
        "divisors/p2xp1-53.json",
        "divisors/blp3-h.json",
        "divisors/blp3-pol.json",
    ] {
        let p = loaded_divisor(rel)?.polytope();
        let oracle = p.ehrhart_volume_oracle().map_err(|e| format!("{}: {}", rel, e))?;
        ensure!(p.volume() == oracle, "{}: volume {} != oracle {}", rel, p.volume(), oracle);
    }
    // The exceptional divisor has a degenerate section polytope: outside
    // the oracle's domain, with volume zero.
    let p = loaded_divisor("divisors/blp3-e.json")?.polytope();
    match p.ehrhart_volume_oracle() {
        Err(PolytopeError::NotFullDimensional) => {}
        other => return Err(format!("blp3-e: expected degenerate polytope, got {:?}", other)),
    }
    ensure!(p.volume() == rat(0, 1), "blp3-e: degenerate volume should be 0");

    let families = random_families()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x746f726963);
    for fx in &families {
        for _ in 0..20 {
            let coeffs: Vec<i64> = fx.gens.iter().map(|_| rng.gen_range(1..=5)).collect();
            let p = nef_combo(fx, &coeffs).polytope();
            let oracle = p
                .ehrhart_volume_oracle()
                .map_err(|e| format!("{} {:?}: {}", fx.name, coeffs, e))?;
            ensure!(
                p.volume() == oracle,
                "{} {:?}: volume {} != oracle {}",
                fx.name, coeffs, p.volume(), oracle
            );
        }
    }
    Ok(())
}

/// The algebraic law suites: intersection symmetry, multilinearity and
/// equivalence invariance on 200 randomized nef triples; Minkowski
/// additivity of section polytopes; integral decomposition of second
/// dilations; power configurations from decomposable pairs; and the
/// alcoved shortcut against direct section checks on 24 configurations.
fn algebraic_property_suites() -> Result<(), String> {
    let families = random_families()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x746f726963);

    for case in 0..200 {
        let fx = &families[rng.gen_range(0..families.len())];
        let draw = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            fx.gens.iter().map(|_| rng.gen_range(0..=3)).collect()
        };
        let d1 = nef_combo(fx, &draw(&mut rng));
        let d2 = nef_combo(fx, &draw(&mut rng));
        let d3 = nef_combo(fx, &draw(&mut rng));
        let triple = |a: &ToricDivisor, b: &ToricDivisor, c: &ToricDivisor| {
            triple_intersection(a, b, c, None).map_err(|e| format!("case {}: {}", case, e))
        };
        let base = triple(&d1, &d2, &d3)?;
        ensure!(base == triple(&d2, &d1, &d3)?, "case {} ({}): swap 12", case, fx.name);
        ensure!(base == triple(&d3, &d2, &d1)?, "case {} ({}): swap 13", case, fx.name);
        ensure!(base == triple(&d1, &d3, &d2)?, "case {} ({}): swap 23", case, fx.name);

        let extra: Vec<i64> = fx.gens.iter().map(|_| rng.gen_range(0..=2)).collect();
        let extra = nef_combo(fx, &extra);
        let left = triple(&(&d1 + &extra), &d2, &d3)?;
        ensure!(
            left == base.clone() + triple(&extra, &d2, &d3)?,
            "case {} ({}): multilinearity",
            case, fx.name
        );

        let u: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let shifted = &d1 + &principal(fx, &u);
        ensure!(
            base == triple(&shifted, &d2, &d3)?,
            "case {} ({}): equivalence invariance under {:?}",
            case, fx.name, u
        );
    }

    for case in 0..40 {
        let fx = &families[rng.gen_range(0..families.len())];
        let draw = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            fx.gens.iter().map(|_| rng.gen_range(0..=3)).collect()
        };
        let d = nef_combo(fx, &draw(&mut rng));
        let e = nef_combo(fx, &draw(&mut rng));
        let sum = d
            .polytope()
            .minkowski_sum(&e.polytope())
            .map_err(|err| format!("case {}: {:?}", case, err))?;
        let direct = (&d + &e).polytope();
        ensure!(
            sum.lattice_point_set() == direct.lattice_point_set(),
            "case {} ({}): Minkowski sum points differ",
            case, fx.name
        );
        ensure!(
            sum.volume() == direct.volume(),
            "case {} ({}): Minkowski sum volume differs",
            case, fx.name
        );
    }

    for fx in &families {
        let double = fx.ample.scale(&int(2));
        ensure!(is_idp(&double, &double), "{}: (2A, 2A) not decomposable", fx.name);
        ensure!(
            is_idp(&double, &double.scale(&int(2))),
            "{}: (2A, 4A) not decomposable",
            fx.name
        );
    }

    for fx in &families {
        ensure!(is_idp(&fx.ample, &fx.ample), "{}: (A, A) not decomposable", fx.name);
        for k in 2i64..=4 {
            projectively_normal_bound(&fx.ample, &int(k))
                .map_err(|e| format!("{}: power {} rejected: {:?}", fx.name, k, e))?;
        }
    }

    let by_name = |n: &str| families.iter().find(|f| f.name == n).unwrap();
    ensure!(!alcoved_fan_check(&by_name("p3").fan), "p3 should not be alcoved");
    ensure!(!alcoved_fan_check(&by_name("wps2").fan), "wps2 should not be alcoved");
    let mut cases = 0;
    for (name, es, eprimes) in [
        (
            "p2xp1",
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]],
            vec![vec![1, 1], vec![2, 2]],
        ),
        (
            "p1cubed",
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0], vec![1, 1, 1]],
            vec![vec![1, 1, 1], vec![2, 1, 1]],
        ),
        ("blp3", vec![vec![1, 0], vec![0, 1], vec![1, 1]], vec![vec![1, 1], vec![2, 2]]),
    ] {
        let fx = by_name(name);
        ensure!(alcoved_fan_check(&fx.fan), "{} should be alcoved", name);
        for e in &es {
            for ep in &eprimes {
                let e = nef_combo(fx, e);
                let ep = nef_combo(fx, ep);
                ensure!(ep.is_big(), "{}: complement must be big", name);
                let report = has_connected_sections(&(&e + &ep), &[e.clone()]);
                ensure!(report.holds(), "{}: {}", name, report);
                cases += 1;
            }
        }
    }
    ensure!(cases >= 20, "only {} alcoved configurations", cases);
    Ok(())
}

/// Power configurations on projective space: the degree-d surface with
/// auxiliary `(d-1)H` bounds a degree-e curve by `(d-5)e/2 + 1`.
fn power_configuration_bound() -> Result<(), String> {
    let h = loaded_divisor("divisors/p3-h.json")?;
    for d in 2i64..=9 {
        let vc = projectively_normal_bound(&h, &int(d))
            .map_err(|e| format!("degree {}: {:?}", d, e))?;
        for e in 1i64..=5 {
            let f = QDivisor::new(h.scale(&int(e)), int(d));
            let got = vc
                .genus_lower_bound(&f, Some(&h))
                .map_err(|err| format!("degree {} curve {}: {}", d, e, err))?;
            let expect = rat(1, 1) + rat((d - 5) * e, 2);
            ensure!(
                got == expect,
                "degree {} curve {}: bound {}, expected {}",
                d, e, got, expect
            );
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Option<u64>, fn() -> Result<(), String>); 8] = [
        ("blowup intersection table", Some(1), blowup_intersection_table),
        ("closed-form genus bounds", Some(30), closed_form_genus_bounds),
        ("boundary genus formulas", None, boundary_genus_formulas),
        ("certified region reproduction", Some(120), certified_region_reproduction),
        ("two-block section graph", None, two_block_section_graph),
        ("volume oracle", Some(60), volume_oracle),
        ("algebraic property suites", None, algebraic_property_suites),
        ("power configuration bound", None, power_configuration_bound),
    ];

    let mut failed = false;
    for (i, (label, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let text = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            Err(format!("panicked: {}", text))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| match budget {
            Some(secs) if elapsed > Duration::from_secs(*secs) => {
                Err(format!("took {:.1}s, budget {}s", elapsed.as_secs_f64(), secs))
            }
            _ => Ok(()),
        });
        match outcome {
            Ok(()) => {
                println!("criterion {} ({}): PASS [{:.1}s]", i + 1, label, elapsed.as_secs_f64());
            }
            Err(why) => {
                failed = true;
                println!(
                    "criterion {} ({}): FAIL [{:.1}s] {}",
                    i + 1, label, elapsed.as_secs_f64(), why
                );
            }
        }
    }
    std::process::exit(if failed { 1 } else { 0 });
}
