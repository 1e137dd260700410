//! Shared threefold fixtures for the integration suites: the five fans
//! with nef cone generators and an ample reference each.

use std::sync::Arc;

use toric_core::lattice::{int, ivec};
use toric_core::toric::{Fan, ToricDivisor};

pub struct Fixture {
    pub name: &'static str,
    pub fan: Arc<Fan>,
    /// Generators of the nef cone; nonnegative combinations are nef.
    pub nef_generators: Vec<ToricDivisor>,
    pub ample: ToricDivisor,
}

/// Nonnegative combination of the fixture's nef generators.
pub fn nef_combo(fx: &Fixture, coeffs: &[i64]) -> ToricDivisor {
    assert_eq!(coeffs.len(), fx.nef_generators.len());
    let mut d = ToricDivisor::zero(&fx.fan);
    for (g, c) in fx.nef_generators.iter().zip(coeffs) {
        assert!(*c >= 0);
        d = &d + &g.scale(&int(*c));
    }
    d
}

pub fn fixtures() -> Vec<Fixture> {
    let p3 = Fan::new(
        3,
        vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1]), ivec(&[-1, -1, -1])],
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .unwrap();
    let p2xp1 = Fan::new(
        3,
        vec![
            ivec(&[1, 0, 0]),
            ivec(&[0, -1, 0]),
            ivec(&[-1, 1, 0]),
            ivec(&[0, 0, 1]),
            ivec(&[0, 0, -1]),
        ],
        vec![
            vec![0, 1, 3],
            vec![1, 2, 3],
            vec![0, 2, 3],
            vec![0, 1, 4],
            vec![1, 2, 4],
            vec![0, 2, 4],
        ],
    )
    .unwrap();
    let p1cubed = Fan::new(
        3,
        vec![
            ivec(&[1, 0, 0]),
            ivec(&[-1, 0, 0]),
            ivec(&[0, 1, 0]),
            ivec(&[0, -1, 0]),
            ivec(&[0, 0, 1]),
            ivec(&[0, 0, -1]),
        ],
        vec![
            vec![0, 2, 4],
            vec![0, 2, 5],
            vec![0, 3, 4],
            vec![0, 3, 5],
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
        ],
    )
    .unwrap();
    let blp3 = Fan::new(
        3,
        vec![
            ivec(&[1, 0, 0]),
            ivec(&[0, -1, 0]),
            ivec(&[0, 1, -1]),
            ivec(&[-1, 0, 1]),
            ivec(&[1, 0, -1]),
        ],
        vec![
            vec![0, 2, 3],
            vec![0, 1, 3],
            vec![1, 2, 3],
            vec![0, 2, 4],
            vec![0, 1, 4],
            vec![1, 2, 4],
        ],
    )
    .unwrap();
    let wps2 = Fan::new(
        3,
        vec![
            ivec(&[1, 0, 0]),
            ivec(&[0, 1, 0]),
            ivec(&[0, 0, 1]),
            ivec(&[-1, -1, -2]),
            ivec(&[0, 0, -1]),
        ],
        vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![1, 2, 3],
            vec![0, 1, 4],
            vec![0, 3, 4],
            vec![1, 3, 4],
        ],
    )
    .unwrap();

    let d = |fan: &Arc<Fan>, coeffs: &[i64]| ToricDivisor::from_i64(fan, coeffs);
    let fixtures = vec![
        Fixture {
            name: "p3",
            nef_generators: vec![d(&p3, &[0, 0, 0, 1])],
            ample: d(&p3, &[0, 0, 0, 1]),
            fan: p3,
        },
        Fixture {
            name: "p2xp1",
            nef_generators: vec![d(&p2xp1, &[1, 0, 0, 0, 0]), d(&p2xp1, &[0, 0, 0, 1, 0])],
            ample: d(&p2xp1, &[1, 0, 0, 1, 0]),
            fan: p2xp1,
        },
        Fixture {
            name: "p1cubed",
            nef_generators: vec![
                d(&p1cubed, &[1, 0, 0, 0, 0, 0]),
                d(&p1cubed, &[0, 0, 1, 0, 0, 0]),
                d(&p1cubed, &[0, 0, 0, 0, 1, 0]),
            ],
            ample: d(&p1cubed, &[1, 0, 1, 0, 1, 0]),
            fan: p1cubed,
        },
        Fixture {
            name: "blp3",
            nef_generators: vec![d(&blp3, &[0, 0, 0, 1, 0]), d(&blp3, &[1, 0, 0, 0, 0])],
            ample: d(&blp3, &[0, 0, 0, 2, -1]),
            fan: blp3,
        },
        Fixture {
            name: "wps2",
            nef_generators: vec![d(&wps2, &[0, 0, 0, 1, 0]), d(&wps2, &[0, 0, 0, 2, 1])],
            ample: d(&wps2, &[0, 0, 0, 3, 1]),
            fan: wps2,
        },
    ];
    for fx in &fixtures {
        for g in &fx.nef_generators {
            assert!(g.is_nef(), "{}: generator not nef", fx.name);
        }
        assert!(fx.ample.is_ample(), "{}: reference not ample", fx.name);
    }
    fixtures
}
