//! Algebraic hyperbolicity certificates for very general surfaces in
//! complete toric threefolds.
//!
//! A surface `S` is algebraically hyperbolic if there is an `eps > 0` with
//! `2g(C) - 2 >= eps deg(C)` for every irreducible curve `C` on `S`, the
//! degree measured against a fixed polarization. [`certify`] decides one
//! parameter point of a family and returns a [`Verdict`]:
//!
//! * `Refuted`: some toric boundary divisor cuts a curve of genus at most
//!   one on the very general member, with the facet as witness. Such a
//!   curve defeats every `eps`.
//! * `Certified`: an explicit `eps`, together with the ledger of curve
//!   classes it was minimized over. Curves off the toric boundary are
//!   covered by the genus bound of a verified configuration evaluated on
//!   the declared extreme rays of the curve class cone (by the mediant
//!   inequality, the minimum of `(2g - 2) / deg` over the cone is attained
//!   at a ray); boundary curves contribute their exact facet genus.
//! * `Unknown`: a hypothesis failed, with a machine-readable reason. This
//!   is deliberately not a refutation.
//!
//! Gate order is fixed: boundary refutation, Picard restriction,
//! configuration hypotheses (plus declared projections), then the ray and
//! boundary rows.
//!
//! The [`families`] submodule carries the worked parametric families
//! (projective space, two products, a blowup and a resolved weighted
//! projective space) with their published certified regions, and a sweep
//! driver for scanning parameter grids.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::bounds::{
    curve_pairing, triple_intersection, Config, ConfigDefect, IntersectError, QDivisor,
};
use crate::lattice::{int, solve_rational, Int, IntMatrix, Rat};
use crate::toric::ToricDivisor;

/// Status of the restriction `Pic(X) -> Pic(S)` for the very general
/// member: the ray rows only see curve classes coming from the ambient
/// threefold, so certification is sound only when that restriction is
/// surjective or bypassed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PicardRestriction {
    /// The parameter point lies in the range where surjectivity is known.
    Asserted,
    /// Outside the known range; certification stops with `Unknown`.
    NotAsserted,
    /// The argument does not use the restriction (projection mode).
    NotNeeded,
}

/// An extreme ray of the cone of potential curve classes on the very
/// general surface, written as the class cut out by a rational divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRay {
    pub label: String,
    pub class: QDivisor,
}

/// A declared lower bound for the comparison divisor, used when the genus
/// bound is transported from a modification. The engine checks that each
/// `E_i + K` exceeds `bound` by a nonnegative combination of the
/// discardable classes, and that every discardable class pairs
/// nonnegatively with moving curves for a machine-checkable reason: it is
/// nef, or it is an effective sum of boundary divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeclaredProjection {
    pub bound: ToricDivisor,
    pub discardables: Vec<ToricDivisor>,
}

/// Why a declared projection was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectionDefect {
    /// A discardable class is neither nef nor an effective combination of
    /// boundary divisors.
    UnjustifiedDiscardable { index: usize },
    /// `E + K - bound` is not a visibly nonnegative combination of the
    /// discardable classes.
    NoCombination,
}

/// One certification task: a surface divisor with its hypothesis
/// configuration, the curve cone data, and the measurement divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    /// Hypothesis configuration; its surface divisor is the surface.
    pub config: Config,
    /// Extreme rays of the cone of potential moving curve classes.
    pub curve_rays: Vec<CurveRay>,
    /// Nef divisor measuring curve degrees.
    pub polarization: ToricDivisor,
    /// Ample reference for intersection numbers with non-nef factors.
    pub ample: Option<ToricDivisor>,
    pub picard: PicardRestriction,
    /// Transported bound replacing `E_i + K` in the ray rows.
    pub projection: Option<DeclaredProjection>,
}

impl Problem {
    pub fn surface(&self) -> &ToricDivisor {
        &self.config.d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Ray,
    Boundary,
}

/// One row of the minimization behind a certificate: a curve class with
/// its genus excess `2g - 2` (a lower bound for ray rows, exact for
/// boundary rows), its degree, and their ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRow {
    pub kind: RowKind,
    pub label: String,
    pub excess: Rat,
    pub degree: Rat,
    pub ratio: Rat,
}

/// A boundary curve of genus at most one on the very general member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationWitness {
    /// Ray whose facet cut the curve.
    pub ray: usize,
    pub genus: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnknownReason {
    /// The Picard restriction is not asserted at this parameter point.
    PicardNotAsserted,
    /// The configuration failed verification.
    Hypothesis(ConfigDefect),
    /// The declared projection could not be checked for this auxiliary.
    Projection { auxiliary: usize, defect: ProjectionDefect },
    /// A curve ray has nonpositive degree against the polarization.
    DegenerateRay { index: usize },
    /// A curve ray row has nonpositive ratio, so no `eps > 0` follows.
    NonpositiveRay { index: usize },
    /// An intersection number could not be computed.
    Arithmetic(IntersectError),
}

impl UnknownReason {
    /// Stable short code for machine-readable reports.
    pub fn code(&self) -> String {
        match self {
            UnknownReason::PicardNotAsserted => String::from("nl_not_asserted"),
            UnknownReason::Hypothesis(defect) => format!("hypothesis:{}", defect.code()),
            UnknownReason::Projection { auxiliary, defect } => match defect {
                ProjectionDefect::UnjustifiedDiscardable { index } => {
                    format!("projection:discardable={}", index)
                }
                ProjectionDefect::NoCombination => format!("projection:auxiliary={}", auxiliary),
            },
            UnknownReason::DegenerateRay { index } => format!("degenerate_ray={}", index),
            UnknownReason::NonpositiveRay { index } => format!("nonpositive_ray={}", index),
            UnknownReason::Arithmetic(e) => format!("arithmetic:{}", e.code()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified { epsilon: Rat, ledger: Vec<LedgerRow> },
    Refuted { witness: RefutationWitness },
    Unknown { reason: UnknownReason },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }
}

/// Checks that `target` (some `E_i + K`) dominates the declared bound
/// modulo discardable classes: `target - bound` must be a nonnegative
/// rational combination of their divisor classes. Solved in the divisor
/// class group; torsion coordinates are compared on representatives, which
/// can only reject valid combinations, never accept invalid ones.
fn verify_projection(
    target: &ToricDivisor,
    projection: &DeclaredProjection,
) -> Result<(), ProjectionDefect> {
    for (index, disc) in projection.discardables.iter().enumerate() {
        let effective = disc.coeffs().iter().all(|c| !c.is_negative());
        if !effective && !disc.is_nef() {
            return Err(ProjectionDefect::UnjustifiedDiscardable { index });
        }
    }
    let group = target.fan().class_group();
    let diff = target - &projection.bound;
    let rhs = group.class_of(diff.coeffs()).0;
    if projection.discardables.is_empty() {
        return if rhs.iter().all(Int::is_zero) {
            Ok(())
        } else {
            Err(ProjectionDefect::NoCombination)
        };
    }
    let columns: Vec<Vec<Int>> = projection
        .discardables
        .iter()
        .map(|d| group.class_of(d.coeffs()).0)
        .collect();
    let rows: Vec<Vec<Int>> = (0..rhs.len())
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let matrix = IntMatrix::from_rows(&rows);
    match solve_rational(&matrix, &rhs) {
        Some(lambda) if lambda.iter().all(|l| !l.is_negative()) => Ok(()),
        _ => Err(ProjectionDefect::NoCombination),
    }
}

/// Decides one certification problem. Gate order is fixed and the
/// precedence is part of the contract:
///
/// 1. any boundary facet curve of genus at most one refutes outright;
/// 2. a missing Picard restriction stops with `Unknown`;
/// 3. the configuration hypotheses (and any declared projection) must
///    verify;
/// 4. every curve ray needs positive degree and the resulting rows,
///    together with the boundary rows, must have positive minimum ratio.
///
/// Boundary facets whose curve has degree zero under the polarization are
/// skipped in step 4: their genus excess is positive by step 1, so they
/// satisfy the hyperbolicity inequality for every `eps`.
pub fn certify(problem: &Problem) -> Verdict {
    let fan = problem.surface().fan().clone();
    assert_eq!(fan.rank(), 3, "certification requires a threefold");
    assert!(
        !problem.curve_rays.is_empty(),
        "curve class cone needs at least one declared ray"
    );
    assert!(problem.polarization.is_nef(), "polarization must be nef");

    let surface_polytope = problem.surface().polytope();
    let facets = surface_polytope.facets().ok();
    if let Some(facets) = &facets {
        for facet in facets {
            let genus = int(facet.interior_points.len() as i64);
            if genus <= int(1) {
                return Verdict::Refuted {
                    witness: RefutationWitness { ray: facet.source, genus },
                };
            }
        }
    }

    if problem.picard == PicardRestriction::NotAsserted {
        return Verdict::Unknown { reason: UnknownReason::PicardNotAsserted };
    }

    let verified = match problem.config.verify() {
        Ok(v) => v,
        Err(defect) => {
            return Verdict::Unknown { reason: UnknownReason::Hypothesis(defect) };
        }
    };
    let canonical = ToricDivisor::canonical(&fan);
    if let Some(projection) = &problem.projection {
        for (auxiliary, e) in verified.auxiliaries().iter().enumerate() {
            if let Err(defect) = verify_projection(&(e + &canonical), projection) {
                return Verdict::Unknown {
                    reason: UnknownReason::Projection { auxiliary, defect },
                };
            }
        }
    }

    let ample = problem.ample.as_ref();
    let mut ledger: Vec<LedgerRow> = Vec::new();
    for (index, ray) in problem.curve_rays.iter().enumerate() {
        let degree = match curve_pairing(
            problem.surface(),
            &ray.class,
            &problem.polarization,
            ample,
        ) {
            Ok(x) => x,
            Err(e) => return Verdict::Unknown { reason: UnknownReason::Arithmetic(e) },
        };
        if !degree.is_positive() {
            return Verdict::Unknown { reason: UnknownReason::DegenerateRay { index } };
        }
        let excess = if let Some(projection) = &problem.projection {
            curve_pairing(problem.surface(), &ray.class, &projection.bound, ample)
        } else {
            verified
                .curve_pairings(&ray.class, ample)
                .map(|p| p.into_iter().min().expect("at least one auxiliary"))
        };
        let excess = match excess {
            Ok(x) => x,
            Err(e) => return Verdict::Unknown { reason: UnknownReason::Arithmetic(e) },
        };
        let ratio = &excess / &degree;
        ledger.push(LedgerRow { kind: RowKind::Ray, label: ray.label.clone(), excess, degree, ratio });
    }

    let facets = facets.expect("verified surface divisor is big");
    for facet in &facets {
        let boundary = ToricDivisor::boundary(&fan, facet.source);
        let degree = match triple_intersection(
            problem.surface(),
            &boundary,
            &problem.polarization,
            ample,
        ) {
            Ok(x) => x,
            Err(e) => return Verdict::Unknown { reason: UnknownReason::Arithmetic(e) },
        };
        if !degree.is_positive() {
            continue;
        }
        let excess = Rat::from_integer(int(2 * facet.interior_points.len() as i64 - 2));
        let ratio = &excess / &degree;
        ledger.push(LedgerRow {
            kind: RowKind::Boundary,
            label: format!("ray{}", facet.source),
            excess,
            degree,
            ratio,
        });
    }

    let epsilon = ledger
        .iter()
        .map(|row| row.ratio.clone())
        .min()
        .expect("ledger has at least one ray row");
    if epsilon.is_positive() {
        Verdict::Certified { epsilon, ledger }
    } else {
        // Boundary rows are positive after the refutation gate, so the
        // minimum sits on a curve ray.
        let index = ledger
            .iter()
            .take(problem.curve_rays.len())
            .position(|row| !row.ratio.is_positive())
            .expect("nonpositive minimum must come from a ray row");
        Verdict::Unknown { reason: UnknownReason::NonpositiveRay { index } }
    }
}

/// The worked parametric families and a sweep driver.
pub mod families {
    use super::*;
    use crate::lattice::ivec;
    use crate::toric::Fan;
    use alloc::collections::BTreeMap;
    use alloc::string::ToString;
    use alloc::sync::Arc;
    use alloc::vec;
    use core::fmt;

    /// Parameter assignment by name.
    pub type Params = BTreeMap<String, i64>;

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub enum FamilyError {
        UnknownFamily(String),
        MissingParam(&'static str),
        UnexpectedParam(String),
        ParamOutOfRange { name: &'static str, value: i64, min: i64 },
    }

    impl fmt::Display for FamilyError {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match self {
                FamilyError::UnknownFamily(name) => write!(f, "unknown family '{}'", name),
                FamilyError::MissingParam(name) => write!(f, "missing parameter '{}'", name),
                FamilyError::UnexpectedParam(name) => write!(f, "unexpected parameter '{}'", name),
                FamilyError::ParamOutOfRange { name, value, min } => {
                    write!(f, "parameter {}={} is below the minimum {}", name, value, min)
                }
            }
        }
    }

    /// A named family of certification problems over integer parameters,
    /// together with its published certified region for cross-checking.
    #[derive(Clone, Copy)]
    pub struct Family {
        name: &'static str,
        param_names: &'static [&'static str],
        minima: &'static [i64],
        builder: fn(&[i64]) -> Problem,
        region: fn(&[i64]) -> bool,
    }

    impl Family {
        pub fn name(&self) -> &'static str {
            self.name
        }

        pub fn param_names(&self) -> &'static [&'static str] {
            self.param_names
        }

        fn values(&self, params: &Params) -> Result<Vec<i64>, FamilyError> {
            for key in params.keys() {
                if !self.param_names.contains(&key.as_str()) {
                    return Err(FamilyError::UnexpectedParam(key.clone()));
                }
            }
            let mut values = Vec::with_capacity(self.param_names.len());
            for (name, min) in self.param_names.iter().zip(self.minima) {
                let value = *params
                    .get(*name)
                    .ok_or(FamilyError::MissingParam(name))?;
                if value < *min {
                    return Err(FamilyError::ParamOutOfRange { name, value, min: *min });
                }
                values.push(value);
            }
            Ok(values)
        }

        pub fn build(&self, params: &Params) -> Result<Problem, FamilyError> {
            Ok((self.builder)(&self.values(params)?))
        }

        /// Whether the published certified region contains the point. The
        /// declared regions are exact, so sweeps must agree in both
        /// directions; see [`certified_region_mismatches`].
        pub fn certified_region_contains(&self, params: &Params) -> Result<bool, FamilyError> {
            Ok((self.region)(&self.values(params)?))
        }
    }

    pub fn all() -> Vec<Family> {
        vec![projective(), product_p2(), product_p1(), blowup(), weighted()]
    }

    pub fn by_name(name: &str) -> Result<Family, FamilyError> {
        all()
            .into_iter()
            .find(|f| f.name == name)
            .ok_or_else(|| FamilyError::UnknownFamily(name.to_string()))
    }

    fn simplex_fan() -> Arc<Fan> {
        Fan::new(
            3,
            vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1]), ivec(&[-1, -1, -1])],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .expect("projective fan is complete")
    }

    fn build_projective(v: &[i64]) -> Problem {
        let a = v[0];
        let fan = simplex_fan();
        let h = ToricDivisor::from_i64(&fan, &[0, 0, 0, 1]);
        Problem {
            config: Config::new(h.scale(&int(a)), vec![h.scale(&int(a - 1))]),
            curve_rays: vec![CurveRay {
                label: String::from("h"),
                class: QDivisor::integral(h.clone()),
            }],
            polarization: h.clone(),
            ample: Some(h),
            picard: if a >= 4 {
                PicardRestriction::Asserted
            } else {
                PicardRestriction::NotAsserted
            },
            projection: None,
        }
    }

    /// Degree `a` surfaces in projective three-space. Certified exactly
    /// for `a >= 6`, with boundary refutations through `a <= 3`.
    pub fn projective() -> Family {
        Family {
            name: "p3",
            param_names: &["a"],
            minima: &[1],
            builder: build_projective,
            region: |v| v[0] >= 6,
        }
    }

    fn product_p2_fan() -> Arc<Fan> {
        Fan::new(
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
        .expect("product fan is complete")
    }

    fn build_product_p2(v: &[i64]) -> Problem {
        let (a, b) = (v[0], v[1]);
        let fan = product_p2_fan();
        let o = |x: i64, y: i64| ToricDivisor::from_i64(&fan, &[x, 0, 0, y, 0]);
        Problem {
            config: Config::new(o(a, b), vec![o(a - 1, b - 1)]),
            curve_rays: vec![
                CurveRay { label: String::from("h"), class: QDivisor::integral(o(1, 0)) },
                CurveRay { label: String::from("f"), class: QDivisor::integral(o(0, 1)) },
            ],
            polarization: o(1, 1),
            ample: Some(o(1, 1)),
            picard: if a >= 4 && b >= 3 {
                PicardRestriction::Asserted
            } else {
                PicardRestriction::NotAsserted
            },
            projection: None,
        }
    }

    /// Bidegree `(a, b)` surfaces in the product of a projective plane and
    /// a line. Certified exactly for `a >= 5, b >= 3`.
    pub fn product_p2() -> Family {
        Family {
            name: "p2xp1",
            param_names: &["a", "b"],
            minima: &[1, 1],
            builder: build_product_p2,
            region: |v| v[0] >= 5 && v[1] >= 3,
        }
    }

    fn product_p1_fan() -> Arc<Fan> {
        Fan::new(
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
        .expect("box fan is complete")
    }

    fn build_product_p1(v: &[i64]) -> Problem {
        let (a, b, c) = (v[0], v[1], v[2]);
        let fan = product_p1_fan();
        let o = |x: i64, y: i64, z: i64| ToricDivisor::from_i64(&fan, &[x, 0, y, 0, z, 0]);
        Problem {
            config: Config::new(o(a, b, c), vec![o(a - 1, b - 1, c - 1)]),
            curve_rays: vec![
                CurveRay { label: String::from("f1"), class: QDivisor::integral(o(1, 0, 0)) },
                CurveRay { label: String::from("f2"), class: QDivisor::integral(o(0, 1, 0)) },
                CurveRay { label: String::from("f3"), class: QDivisor::integral(o(0, 0, 1)) },
            ],
            polarization: o(1, 1, 1),
            ample: Some(o(1, 1, 1)),
            picard: if a >= 3 && b >= 3 && c >= 3 {
                PicardRestriction::Asserted
            } else {
                PicardRestriction::NotAsserted
            },
            projection: None,
        }
    }

    /// Tridegree `(a, b, c)` surfaces in the triple product of lines.
    /// Certified exactly when the two smallest degrees are at least
    /// `(4, 3)` in sorted order.
    pub fn product_p1() -> Family {
        Family {
            name: "p1cubed",
            param_names: &["a", "b", "c"],
            minima: &[1, 1, 1],
            builder: build_product_p1,
            region: |v| {
                let mut s = [v[0], v[1], v[2]];
                s.sort_unstable();
                s[0] >= 4 || (s[0] == 3 && s[1] >= 4)
            },
        }
    }

    fn blowup_fan() -> Arc<Fan> {
        Fan::new(
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
        .expect("blowup fan is complete")
    }

    fn build_blowup(v: &[i64]) -> Problem {
        let (a, b) = (v[0], v[1]);
        if b == 0 {
            // The exceptional class drops out; the surface is the degree
            // `a` hypersurface pulled back from projective space.
            return build_projective(&[a]);
        }
        let fan = blowup_fan();
        let d = ToricDivisor::from_i64(&fan, &[0, a + b, 0, 0, a]);
        let aux = ToricDivisor::from_i64(&fan, &[0, a + b - 1, 0, 0, a - 1]);
        let pol = ToricDivisor::from_i64(&fan, &[0, 0, 0, 2, -1]);
        Problem {
            config: Config::new(d, vec![aux]),
            curve_rays: vec![
                CurveRay {
                    label: String::from("h-e"),
                    class: QDivisor::integral(ToricDivisor::boundary(&fan, 1)),
                },
                CurveRay {
                    label: String::from("e"),
                    class: QDivisor::integral(ToricDivisor::boundary(&fan, 4)),
                },
            ],
            polarization: pol.clone(),
            ample: Some(pol),
            picard: if a >= 2 && b >= 2 {
                PicardRestriction::Asserted
            } else {
                PicardRestriction::NotAsserted
            },
            projection: None,
        }
    }

    /// Surfaces of class `a H + b (H - E)` on the blowup of projective
    /// three-space at a point. `b = 0` delegates to the projective family;
    /// otherwise certified exactly for `a >= 3, b >= 4` together with the
    /// strip `a = 2, b >= 7`.
    pub fn blowup() -> Family {
        Family {
            name: "blp3",
            param_names: &["a", "b"],
            minima: &[1, 0],
            builder: build_blowup,
            region: |v| {
                let (a, b) = (v[0], v[1]);
                if b == 0 {
                    a >= 6
                } else {
                    (a >= 3 && b >= 4) || (a == 2 && b >= 7)
                }
            },
        }
    }

    fn weighted_fan(n: i64) -> Arc<Fan> {
        Fan::new(
            3,
            vec![
                ivec(&[1, 0, 0]),
                ivec(&[0, 1, 0]),
                ivec(&[0, 0, 1]),
                ivec(&[-1, -1, -n]),
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
        .expect("resolved weighted fan is complete")
    }

    fn build_weighted(v: &[i64]) -> Problem {
        let (n, m) = (v[0], v[1]);
        let fan = weighted_fan(n);
        let h = ToricDivisor::from_i64(&fan, &[0, 0, 0, n, 1]);
        let fiber = ToricDivisor::from_i64(&fan, &[0, 0, 0, 1, 0]);
        let exceptional = ToricDivisor::from_i64(&fan, &[0, 0, 0, 0, 1]);
        // On the resolution, E + K exceeds (m - lambda) H by nef and
        // exceptional classes; moving curves meet both nonnegatively.
        let lambda = if n == 2 { 4 } else { 3 };
        let bound = ToricDivisor::from_i64(&fan, &[0, 0, 0, (m - lambda) * n, m - lambda]);
        Problem {
            config: Config::new(
                ToricDivisor::from_i64(&fan, &[0, 0, 0, m * n, m]),
                vec![ToricDivisor::from_i64(&fan, &[0, 0, 0, (m - 1) * n, m - 1])],
            ),
            curve_rays: vec![CurveRay {
                label: String::from("h"),
                class: QDivisor::integral(h.clone()),
            }],
            polarization: h,
            ample: Some(ToricDivisor::from_i64(&fan, &[0, 0, 0, n + 1, 1])),
            picard: PicardRestriction::NotNeeded,
            projection: Some(DeclaredProjection {
                bound,
                discardables: vec![fiber, exceptional],
            }),
        }
    }

    /// Degree `m n` surfaces in the weighted projective space with weights
    /// `(1, 1, 1, n)`, certified through the resolution of its cone
    /// singularity. Exactly `m >= 5` for `n = 2` and `m >= 4` for
    /// `n >= 3`.
    pub fn weighted() -> Family {
        Family {
            name: "wps",
            param_names: &["n", "m"],
            minima: &[2, 1],
            builder: build_weighted,
            region: |v| {
                let (n, m) = (v[0], v[1]);
                if n == 2 {
                    m >= 5
                } else {
                    m >= 4
                }
            },
        }
    }

    /// One evaluated grid point of a sweep.
    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct SweepCell {
        pub params: Params,
        pub verdict: Verdict,
    }

    /// Certifies every point of the grid `fixed x ranges`, the last range
    /// varying fastest. Range bounds are inclusive; an inverted range
    /// yields no cells.
    pub fn sweep(
        family: &Family,
        fixed: &Params,
        ranges: &[(String, i64, i64)],
    ) -> Result<Vec<SweepCell>, FamilyError> {
        for (name, _, _) in ranges {
            if fixed.contains_key(name) {
                return Err(FamilyError::UnexpectedParam(name.clone()));
            }
        }
        let mut cells = Vec::new();
        if ranges.iter().any(|(_, lo, hi)| lo > hi) {
            return Ok(cells);
        }
        let mut current: Vec<i64> = ranges.iter().map(|(_, lo, _)| *lo).collect();
        loop {
            let mut params = fixed.clone();
            for ((name, _, _), value) in ranges.iter().zip(&current) {
                params.insert(name.clone(), *value);
            }
            let problem = family.build(&params)?;
            cells.push(SweepCell { params, verdict: certify(&problem) });
            let mut axis = ranges.len();
            loop {
                if axis == 0 {
                    return Ok(cells);
                }
                axis -= 1;
                if current[axis] < ranges[axis].2 {
                    current[axis] += 1;
                    break;
                }
                current[axis] = ranges[axis].1;
            }
        }
    }

    /// Grid points where the published certified region and the computed
    /// verdict disagree, in either direction. Empty on a correct engine.
    pub fn certified_region_mismatches(
        family: &Family,
        cells: &[SweepCell],
    ) -> Result<Vec<Params>, FamilyError> {
        let mut out = Vec::new();
        for cell in cells {
            let declared = family.certified_region_contains(&cell.params)?;
            if declared != cell.verdict.is_certified() {
                out.push(cell.params.clone());
            }
        }
        Ok(out)
    }
}
