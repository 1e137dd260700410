//! Intersection numbers, verified divisor configurations and genus lower
//! bounds for curves on very general surfaces in a toric threefold.
//!
//! Triple intersection numbers of nef divisors are computed by inclusion
//! exclusion over Euclidean volumes of section polytopes; arbitrary
//! Cartier divisors reduce to the nef case by adding a multiple of an
//! ample reference divisor and expanding multilinearly.
//!
//! A configuration `(D; E_1, ..., E_k)` consists of a big divisor on a
//! Gorenstein threefold together with nontrivial effective basepoint-free
//! auxiliaries whose sections connect (see [`crate::sections`]). For such a
//! configuration, an irreducible curve `C` on a very general surface in
//! `|D|`, not contained in the toric boundary, satisfies
//! `g(C) >= 1 + min_i C.(E_i + K) / 2`. Curves inside the boundary are
//! handled separately: their geometric genus is the number of interior
//! lattice points of the corresponding facet of `P(D)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::lattice::{int, rat, vec_dot, vec_sub, Int, IntVec, Rat};
use crate::sections::{has_connected_sections, idp_gap, ConnectedSectionsReport};
use crate::toric::{CartierDefect, ToricDivisor, Wall};

/// Search cap for incremental constructions (nef decompositions and
/// threshold multiples). Generous compared to every worked example.
const SEARCH_CAP: i64 = 1000;

fn fans_match(a: &ToricDivisor, b: &ToricDivisor) -> bool {
    alloc::sync::Arc::ptr_eq(a.fan(), b.fan()) || a.fan() == b.fan()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectError {
    /// Triple intersection numbers need a rank-three fan.
    NotRankThree,
    FanMismatch,
    /// A factor is not nef and no ample reference was supplied.
    NeedAmpleReference,
    /// The supplied reference divisor is not ample.
    ReferenceNotAmple,
    /// No multiple of the reference made the divisor nef within the
    /// search cap.
    DecompositionExhausted,
}

impl IntersectError {
    /// Stable short code for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            IntersectError::NotRankThree => "not_rank_three",
            IntersectError::FanMismatch => "fan_mismatch",
            IntersectError::NeedAmpleReference => "need_ample_reference",
            IntersectError::ReferenceNotAmple => "reference_not_ample",
            IntersectError::DecompositionExhausted => "decomposition_exhausted",
        }
    }
}

impl fmt::Display for IntersectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectError::NotRankThree => write!(f, "intersection numbers require a threefold"),
            IntersectError::FanMismatch => write!(f, "divisors live on different fans"),
            IntersectError::NeedAmpleReference => {
                write!(f, "non-nef factor needs an ample reference divisor")
            }
            IntersectError::ReferenceNotAmple => write!(f, "reference divisor is not ample"),
            IntersectError::DecompositionExhausted => {
                write!(f, "no nef decomposition found within the search cap")
            }
        }
    }
}

/// Triple intersection number of three nef divisors, by inclusion
/// exclusion over section polytope volumes: the sum of
/// `(-1)^(3 - |S|) vol P(sum_{i in S} D_i)` over nonempty subsets.
/// Lower-dimensional polytopes have volume zero, which handles degenerate
/// factors uniformly.
pub fn triple_intersection_nef(
    d1: &ToricDivisor,
    d2: &ToricDivisor,
    d3: &ToricDivisor,
) -> Result<Rat, IntersectError> {
    if d1.fan().rank() != 3 {
        return Err(IntersectError::NotRankThree);
    }
    if !fans_match(d1, d2) || !fans_match(d1, d3) {
        return Err(IntersectError::FanMismatch);
    }
    assert!(
        d1.is_nef() && d2.is_nef() && d3.is_nef(),
        "inclusion-exclusion volume formula needs nef factors"
    );
    Ok(nef_triple_memoized([d1, d2, d3], &mut BTreeMap::new()))
}

/// Inclusion-exclusion core, caching subset-sum volumes by coefficient
/// vector. Triples in one multilinear expansion share subsets, so a
/// shared memo saves most of the polytope work.
fn nef_triple_memoized(
    divisors: [&ToricDivisor; 3],
    volumes: &mut BTreeMap<IntVec, Rat>,
) -> Rat {
    let mut total = Rat::zero();
    for mask in 1u8..8 {
        let mut sum = ToricDivisor::zero(divisors[0].fan());
        let mut size = 0;
        for (i, d) in divisors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = &sum + *d;
                size += 1;
            }
        }
        let vol = volumes
            .entry(sum.coeffs().to_vec())
            .or_insert_with(|| sum.polytope().volume())
            .clone();
        if (3 - size) % 2 == 0 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    total
}

/// Smallest `k >= 0` with `D + k A` nef, together with that nef divisor.
/// `A` must be ample.
pub fn nef_decomposition(
    d: &ToricDivisor,
    ample: &ToricDivisor,
) -> Result<(ToricDivisor, Int), IntersectError> {
    if !fans_match(d, ample) {
        return Err(IntersectError::FanMismatch);
    }
    if !ample.is_ample() {
        return Err(IntersectError::ReferenceNotAmple);
    }
    for k in 0..=SEARCH_CAP {
        let candidate = d + &ample.scale(&int(k));
        if candidate.is_nef() {
            return Ok((candidate, int(k)));
        }
    }
    Err(IntersectError::DecompositionExhausted)
}

/// Triple intersection number of arbitrary Cartier divisors. Nef factors
/// are handled directly; otherwise each factor is written as a difference
/// of nef divisors using the ample reference, and the product expands
/// multilinearly into nef triples.
pub fn triple_intersection(
    d1: &ToricDivisor,
    d2: &ToricDivisor,
    d3: &ToricDivisor,
    ample: Option<&ToricDivisor>,
) -> Result<Rat, IntersectError> {
    triple_intersection_cached(d1, d2, d3, ample, &mut BTreeMap::new())
}

/// [`triple_intersection`] against a caller-held volume cache. Valid for
/// any sequence of calls whose divisors live on one fan, since the cache
/// keys subset sums by coefficient vector only.
fn triple_intersection_cached(
    d1: &ToricDivisor,
    d2: &ToricDivisor,
    d3: &ToricDivisor,
    ample: Option<&ToricDivisor>,
    volumes: &mut BTreeMap<IntVec, Rat>,
) -> Result<Rat, IntersectError> {
    if d1.fan().rank() != 3 {
        return Err(IntersectError::NotRankThree);
    }
    if !fans_match(d1, d2) || !fans_match(d1, d3) {
        return Err(IntersectError::FanMismatch);
    }
    if d1.is_nef() && d2.is_nef() && d3.is_nef() {
        return Ok(nef_triple_memoized([d1, d2, d3], volumes));
    }
    let amp = ample.ok_or(IntersectError::NeedAmpleReference)?;
    if !fans_match(d1, amp) {
        return Err(IntersectError::FanMismatch);
    }
    if !amp.is_ample() {
        return Err(IntersectError::ReferenceNotAmple);
    }
    // D_i = N_i - k_i A with both parts nef.
    let mut parts = Vec::with_capacity(3);
    for d in [d1, d2, d3] {
        parts.push(nef_decomposition(d, amp)?);
    }
    let mut total = Rat::zero();
    for mask in 0u8..8 {
        // Bit set: take the subtracted ample part of that factor.
        let mut coeff = Rat::one();
        let mut factors: Vec<&ToricDivisor> = Vec::with_capacity(3);
        for (i, (nef, k)) in parts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                coeff = -coeff * Rat::from_integer(k.clone());
                factors.push(amp);
            } else {
                factors.push(nef);
            }
        }
        if coeff.is_zero() {
            continue;
        }
        // Parts are nef by construction, so the core runs directly.
        total += coeff * nef_triple_memoized([factors[0], factors[1], factors[2]], volumes);
    }
    Ok(total)
}

/// Degree of the toric curve dual to a wall against a Cartier divisor,
/// from the jump of local data across the wall. Requires a smooth fan,
/// where the two maximal cones are spanned by the wall plus one extra ray
/// each.
pub fn wall_curve_degree(d: &ToricDivisor, wall: &Wall) -> Result<Int, CartierDefect> {
    let fan = d.fan();
    assert!(fan.is_smooth(), "wall degrees via data jumps assume a smooth fan");
    let data = d.cartier_data()?;
    let (a, b) = wall.cones;
    let va = fan.max_cones()[a]
        .iter()
        .copied()
        .find(|r| !wall.rays.contains(r))
        .expect("maximal cone strictly contains its wall");
    let jump = vec_sub(&data[b], &data[a]);
    let deg = vec_dot(&jump, fan.ray(va));
    if cfg!(debug_assertions) {
        let vb = fan.max_cones()[b]
            .iter()
            .copied()
            .find(|r| !wall.rays.contains(r))
            .unwrap();
        let other = vec_dot(&vec_sub(&data[a], &data[b]), fan.ray(vb));
        debug_assert_eq!(deg, other, "wall degree is orientation independent");
    }
    Ok(deg)
}

/// A formal rational multiple `divisor / denom` of a divisor, used for
/// curve classes cut out on a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDivisor {
    pub divisor: ToricDivisor,
    pub denom: Int,
}

impl QDivisor {
    pub fn new(divisor: ToricDivisor, denom: Int) -> Self {
        assert!(denom.is_positive(), "denominator must be positive");
        QDivisor { divisor, denom }
    }

    pub fn integral(divisor: ToricDivisor) -> Self {
        Self::new(divisor, Int::one())
    }
}

/// `(D . F . T) / denom(F)` for the curve `S n F` on a surface
/// `S in |D|`.
pub fn curve_pairing(
    d: &ToricDivisor,
    f: &QDivisor,
    target: &ToricDivisor,
    ample: Option<&ToricDivisor>,
) -> Result<Rat, IntersectError> {
    let t = triple_intersection(d, &f.divisor, target, ample)?;
    Ok(t / Rat::from_integer(f.denom.clone()))
}

/// Why a configuration fails verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigDefect {
    NotThreefold,
    FanMismatch,
    NotGorenstein(CartierDefect),
    SurfaceNotBig,
    NoAuxiliaries,
    /// `P(E_i)` has no lattice point, so `E_i` is not effective.
    AuxiliaryNotEffective { index: usize },
    /// `E_i` is linearly trivial.
    AuxiliaryTrivial { index: usize },
    AuxiliaryNotBasepointFree { index: usize },
    SectionsNotConnected(ConnectedSectionsReport),
    /// Power construction: the base divisor is not nef.
    PowerBaseNotNef,
    /// Power construction: the base pair has a decomposition gap.
    PowerNotDecomposable { witness: IntVec },
    /// Power construction: the exponent must be at least two.
    PowerTooSmall,
}

impl ConfigDefect {
    /// Stable short code for machine-readable reports.
    pub fn code(&self) -> String {
        match self {
            ConfigDefect::NotThreefold => String::from("not_threefold"),
            ConfigDefect::FanMismatch => String::from("fan_mismatch"),
            ConfigDefect::NotGorenstein(_) => String::from("not_gorenstein"),
            ConfigDefect::SurfaceNotBig => String::from("surface_not_big"),
            ConfigDefect::NoAuxiliaries => String::from("no_auxiliaries"),
            ConfigDefect::AuxiliaryNotEffective { index } => {
                format!("auxiliary_not_effective={}", index)
            }
            ConfigDefect::AuxiliaryTrivial { index } => format!("auxiliary_trivial={}", index),
            ConfigDefect::AuxiliaryNotBasepointFree { index } => {
                format!("auxiliary_not_basepoint_free={}", index)
            }
            ConfigDefect::SectionsNotConnected(_) => String::from("sections_not_connected"),
            ConfigDefect::PowerBaseNotNef => String::from("power_base_not_nef"),
            ConfigDefect::PowerNotDecomposable { .. } => String::from("power_not_decomposable"),
            ConfigDefect::PowerTooSmall => String::from("power_too_small"),
        }
    }
}

impl fmt::Display for ConfigDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigDefect::NotThreefold => write!(f, "configuration requires a threefold"),
            ConfigDefect::FanMismatch => write!(f, "divisors live on different fans"),
            ConfigDefect::NotGorenstein(d) => write!(f, "fan is not Gorenstein: {}", d),
            ConfigDefect::SurfaceNotBig => write!(f, "surface divisor is not big"),
            ConfigDefect::NoAuxiliaries => write!(f, "configuration needs at least one auxiliary"),
            ConfigDefect::AuxiliaryNotEffective { index } => {
                write!(f, "auxiliary {} has no sections", index)
            }
            ConfigDefect::AuxiliaryTrivial { index } => {
                write!(f, "auxiliary {} is linearly trivial", index)
            }
            ConfigDefect::AuxiliaryNotBasepointFree { index } => {
                write!(f, "auxiliary {} is not basepoint-free", index)
            }
            ConfigDefect::SectionsNotConnected(r) => write!(f, "sections not connected: {}", r),
            ConfigDefect::PowerBaseNotNef => write!(f, "power base divisor is not nef"),
            ConfigDefect::PowerNotDecomposable { witness } => {
                write!(f, "base pair has a decomposition gap at {:?}", witness)
            }
            ConfigDefect::PowerTooSmall => write!(f, "power construction needs exponent >= 2"),
        }
    }
}

/// An unverified configuration `(D; E_1, ..., E_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub d: ToricDivisor,
    pub es: Vec<ToricDivisor>,
}

impl Config {
    pub fn new(d: ToricDivisor, es: Vec<ToricDivisor>) -> Self {
        Config { d, es }
    }

    /// Runs every hypothesis check and stamps the result. The returned
    /// value is the only way to obtain a genus bound.
    pub fn verify(&self) -> Result<VerifiedConfig, ConfigDefect> {
        let fan = self.d.fan();
        if fan.rank() != 3 {
            return Err(ConfigDefect::NotThreefold);
        }
        if self.es.iter().any(|e| !fans_match(&self.d, e)) {
            return Err(ConfigDefect::FanMismatch);
        }
        if let Err(defect) = fan.gorenstein_data() {
            return Err(ConfigDefect::NotGorenstein(defect));
        }
        if !self.d.is_big() {
            return Err(ConfigDefect::SurfaceNotBig);
        }
        if self.es.is_empty() {
            return Err(ConfigDefect::NoAuxiliaries);
        }
        let group = fan.class_group();
        let trivial = ToricDivisor::zero(fan).class(&group);
        for (index, e) in self.es.iter().enumerate() {
            if e.polytope().lattice_points().is_empty() {
                return Err(ConfigDefect::AuxiliaryNotEffective { index });
            }
            if e.class(&group) == trivial {
                return Err(ConfigDefect::AuxiliaryTrivial { index });
            }
            if !e.is_basepoint_free() {
                return Err(ConfigDefect::AuxiliaryNotBasepointFree { index });
            }
        }
        let sections = has_connected_sections(&self.d, &self.es);
        if !sections.holds() {
            return Err(ConfigDefect::SectionsNotConnected(sections));
        }
        let k = ToricDivisor::canonical(fan);
        let targets = self.es.iter().map(|e| e + &k).collect();
        Ok(VerifiedConfig {
            d: self.d.clone(),
            es: self.es.clone(),
            sections,
            targets,
            volumes: RefCell::new(BTreeMap::new()),
        })
    }
}

/// A configuration that passed [`Config::verify`].
#[derive(Clone, Debug)]
pub struct VerifiedConfig {
    d: ToricDivisor,
    es: Vec<ToricDivisor>,
    pub sections: ConnectedSectionsReport,
    /// The pairing divisors `E_i + K`, fixed at verification.
    targets: Vec<ToricDivisor>,
    /// Subset-sum volume cache shared by every pairing through this
    /// configuration; sound because all factors live on one fan.
    volumes: RefCell<BTreeMap<IntVec, Rat>>,
}

impl VerifiedConfig {
    pub fn surface(&self) -> &ToricDivisor {
        &self.d
    }

    pub fn auxiliaries(&self) -> &[ToricDivisor] {
        &self.es
    }

    /// The values `C.(E_i + K)` for the curve class `S n F`, one per
    /// auxiliary divisor.
    pub fn curve_pairings(
        &self,
        f: &QDivisor,
        ample: Option<&ToricDivisor>,
    ) -> Result<Vec<Rat>, IntersectError> {
        let mut volumes = self.volumes.borrow_mut();
        self.targets
            .iter()
            .map(|t| {
                let triple =
                    triple_intersection_cached(&self.d, &f.divisor, t, ample, &mut volumes)?;
                Ok(triple / Rat::from_integer(f.denom.clone()))
            })
            .collect()
    }

    /// Genus lower bound `1 + min_i C.(E_i + K) / 2` for an irreducible
    /// curve `C = S n F` on a very general `S in |D|` not contained in the
    /// toric boundary.
    pub fn genus_lower_bound(
        &self,
        f: &QDivisor,
        ample: Option<&ToricDivisor>,
    ) -> Result<Rat, IntersectError> {
        let pairings = self.curve_pairings(f, ample)?;
        let min = pairings.into_iter().min().expect("at least one auxiliary");
        Ok(Rat::one() + min * rat(1, 2))
    }
}

/// Curve class on a very general surface: either cut out by a rational
/// divisor class or contained in the toric boundary over a ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveClass {
    CompleteIntersection(QDivisor),
    Boundary { ray: usize },
}

/// Genus information for a curve class: a lower bound for moving classes,
/// the exact geometric genus for boundary curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenusBound {
    LowerBound(Rat),
    ExactBoundary(Int),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundsError {
    Intersect(IntersectError),
    Boundary(BoundaryCurveError),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::Intersect(e) => write!(f, "{}", e),
            BoundsError::Boundary(e) => write!(f, "{}", e),
        }
    }
}

/// Routes a curve class to the matching genus computation.
pub fn curve_genus_bound(
    config: &VerifiedConfig,
    class: &CurveClass,
    ample: Option<&ToricDivisor>,
) -> Result<GenusBound, BoundsError> {
    match class {
        CurveClass::CompleteIntersection(f) => config
            .genus_lower_bound(f, ample)
            .map(GenusBound::LowerBound)
            .map_err(BoundsError::Intersect),
        CurveClass::Boundary { ray } => boundary_curve_genus(&config.d, *ray)
            .map(GenusBound::ExactBoundary)
            .map_err(BoundsError::Boundary),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryCurveError {
    /// `P(D)` is not full-dimensional, so facets are undefined.
    SurfaceNotBig,
    /// The ray supports no facet of `P(D)`; the corresponding boundary
    /// surface meets a very general member in no curve of its own.
    NoFacetForRay { ray: usize },
}

impl fmt::Display for BoundaryCurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCurveError::SurfaceNotBig => write!(f, "surface divisor is not big"),
            BoundaryCurveError::NoFacetForRay { ray } => {
                write!(f, "ray {} supports no facet of the section polytope", ray)
            }
        }
    }
}

/// Geometric genus of the curve cut on a very general member of `|D|` by
/// the boundary divisor of a ray: the number of lattice points interior to
/// the facet of `P(D)` with that ray as its normal.
pub fn boundary_curve_genus(d: &ToricDivisor, ray: usize) -> Result<Int, BoundaryCurveError> {
    let p = d.polytope();
    let facets = p.facets().map_err(|_| BoundaryCurveError::SurfaceNotBig)?;
    facets
        .iter()
        .find(|f| f.source == ray)
        .map(|f| Int::from(f.interior_points.len()))
        .ok_or(BoundaryCurveError::NoFacetForRay { ray })
}

/// Power-of-a-divisor configuration: for nef `D` with `(D, D)`
/// decomposable and `m >= 2`, the configuration `(mD; (m-1)D)` has
/// connected sections. Verification still runs in full, so the result
/// carries the usual stamp.
pub fn projectively_normal_bound(
    d: &ToricDivisor,
    m: &Int,
) -> Result<VerifiedConfig, ConfigDefect> {
    if *m < int(2) {
        return Err(ConfigDefect::PowerTooSmall);
    }
    if !d.is_nef() {
        return Err(ConfigDefect::PowerBaseNotNef);
    }
    if let Some(witness) = idp_gap(d, d) {
        return Err(ConfigDefect::PowerNotDecomposable { witness });
    }
    let surface = d.scale(m);
    let aux = d.scale(&(m - Int::one()));
    Config::new(surface, alloc::vec![aux]).verify()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThresholdError {
    ReferenceNotAmple,
    NoMoves,
    NoGenerators,
    GeneratorNotNef { index: usize },
    /// The section polytope of a generator has a non-lattice vertex.
    GeneratorNotLattice { index: usize },
    /// Postcondition failure: an edge of the combined polytope is shorter
    /// than four times the longest generator edge.
    ShortEdge { found: Int, required: Int },
    SearchExhausted,
}

impl fmt::Display for ThresholdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdError::ReferenceNotAmple => write!(f, "reference divisor is not ample"),
            ThresholdError::NoMoves => write!(f, "move set is empty"),
            ThresholdError::NoGenerators => write!(f, "generator list is empty"),
            ThresholdError::GeneratorNotNef { index } => {
                write!(f, "generator {} is not nef", index)
            }
            ThresholdError::GeneratorNotLattice { index } => {
                write!(f, "generator {} has a non-lattice section polytope", index)
            }
            ThresholdError::ShortEdge { found, required } => {
                write!(f, "combined polytope has an edge of length {} < {}", found, required)
            }
            ThresholdError::SearchExhausted => write!(f, "threshold search exhausted"),
        }
    }
}

/// Smallest multiple `k H` of an ample reference such that some lattice
/// translate of `P(k H)` contains every move vector, together with the
/// divisor itself. The move set is used exactly as given.
pub fn markov_threshold_divisor(
    ample: &ToricDivisor,
    moves: &[IntVec],
) -> Result<(ToricDivisor, Int), ThresholdError> {
    if !ample.is_ample() {
        return Err(ThresholdError::ReferenceNotAmple);
    }
    if moves.is_empty() {
        return Err(ThresholdError::NoMoves);
    }
    for k in 1..=SEARCH_CAP {
        let candidate = ample.scale(&int(k));
        let p = candidate.polytope();
        // A translate `t` works iff `<n, g + t> + c >= 0` for every
        // retained inequality and every move, i.e. t satisfies the
        // inequalities shifted by the per-normal worst move.
        let shifted: Vec<(IntVec, Int)> = p
            .inequalities()
            .iter()
            .map(|iq| {
                let worst = moves
                    .iter()
                    .map(|g| vec_dot(&iq.normal, g))
                    .min()
                    .expect("nonempty move list");
                (iq.normal.clone(), &iq.offset + worst)
            })
            .collect();
        let feasible = crate::polytope::LatticePolytope::from_inequalities(
            ample.fan().rank(),
            &shifted,
        )
        .expect("shrunk section polytope stays bounded");
        if !feasible.lattice_points().is_empty() {
            return Ok((candidate, int(k)));
        }
    }
    Err(ThresholdError::SearchExhausted)
}

/// Four times the sum of the nef generators, together with the largest
/// edge lattice length among the individual generator polytopes. The
/// construction guarantees, and this function checks, that every edge of
/// the combined section polytope has lattice length at least four times
/// that maximum.
pub fn idp_threshold_divisor(
    generators: &[ToricDivisor],
) -> Result<(ToricDivisor, Int), ThresholdError> {
    if generators.is_empty() {
        return Err(ThresholdError::NoGenerators);
    }
    let mut delta = Int::zero();
    for (index, g) in generators.iter().enumerate() {
        if !g.is_nef() {
            return Err(ThresholdError::GeneratorNotNef { index });
        }
        let longest = g
            .polytope()
            .max_edge_lattice_length()
            .ok_or(ThresholdError::GeneratorNotLattice { index })?;
        if longest > delta {
            delta = longest;
        }
    }
    let mut sum = ToricDivisor::zero(generators[0].fan());
    for g in generators {
        sum = &sum + g;
    }
    let e2 = sum.scale(&int(4));
    let required = &delta * int(4);
    match e2.polytope().min_edge_lattice_length() {
        Some(found) if found < required => {
            return Err(ThresholdError::ShortEdge { found, required });
        }
        Some(_) => {}
        None => {
            // No edges at all: only acceptable when nothing was required.
            if !delta.is_zero() {
                return Err(ThresholdError::ShortEdge { found: Int::zero(), required });
            }
        }
    }
    Ok((e2, delta))
}

/// Combined connectivity threshold data.
#[derive(Clone, Debug)]
pub struct SectionThreshold {
    /// Smallest reference multiple whose translate covers the moves.
    pub markov_divisor: ToricDivisor,
    pub markov_multiple: Int,
    /// Four times the generator sum.
    pub idp_divisor: ToricDivisor,
    /// Largest edge length among generator polytopes.
    pub max_generator_edge: Int,
    /// The sum of the two parts: every divisor dominating it (in the
    /// sense of adding a nef divisor) admits a connected-sections
    /// configuration.
    pub base: ToricDivisor,
}

/// Builds the connectivity threshold `D_0 = E_1 + E_2` from a move set
/// and nef generators.
pub fn connected_sections_threshold(
    ample: &ToricDivisor,
    moves: &[IntVec],
    generators: &[ToricDivisor],
) -> Result<SectionThreshold, ThresholdError> {
    let (markov_divisor, markov_multiple) = markov_threshold_divisor(ample, moves)?;
    let (idp_divisor, max_generator_edge) = idp_threshold_divisor(generators)?;
    let base = &markov_divisor + &idp_divisor;
    Ok(SectionThreshold { markov_divisor, markov_multiple, idp_divisor, max_generator_edge, base })
}

/// Smallest multiple `k H` of the ample reference such that `k H - D_0`
/// is ample, `k H - H - D_0 + K` is ample, and every facet of `P(k H)`
/// has at least two interior lattice points. Surfaces in `|D|` for any
/// `D = k' H` with `k' >= k` then satisfy every hypothesis of the genus
/// machinery with room to spare.
pub fn hyperbolicity_threshold(
    ample: &ToricDivisor,
    base: &ToricDivisor,
) -> Result<(ToricDivisor, Int), ThresholdError> {
    if !ample.is_ample() {
        return Err(ThresholdError::ReferenceNotAmple);
    }
    let k_divisor = ToricDivisor::canonical(ample.fan());
    for k in 1..=SEARCH_CAP {
        let candidate = ample.scale(&int(k));
        if !(&candidate - base).is_ample() {
            continue;
        }
        if !(&(&(&candidate - ample) - base) + &k_divisor).is_ample() {
            continue;
        }
        let p = candidate.polytope();
        let facets = match p.facets() {
            Ok(f) => f,
            Err(_) => continue,
        };
        if facets.iter().all(|f| f.interior_points.len() >= 2) {
            return Ok((candidate, int(k)));
        }
    }
    Err(ThresholdError::SearchExhausted)
}
