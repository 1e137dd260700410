//! Complete fans in lattices of rank two or three, and their
//! torus-invariant divisors.
//!
//! [`Fan::new`] validates its input exhaustively: primitive distinct rays,
//! full-dimensional pointed cones with extreme generators, every wall shared
//! by exactly two cones lying on opposite sides, a connected adjacency
//! graph, and pairwise intersections that are faces of both cones. Together
//! these force the support to be the whole space, so a constructed value is
//! a certified complete fan.
//!
//! A [`ToricDivisor`] is a formal integer combination of the prime divisors
//! attached to rays. Local data on a maximal cone `s` is a lattice point
//! `m_s` with `<m_s, v> = -a_v` for every ray `v` of `s`; a divisor having
//! such data on every cone is Cartier, and nef, ample, big and
//! basepoint-free are decided from that data and from the section polytope
//! `P(D) = {u : <v, u> + a_v >= 0 for all rays v}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{
    all_integral, rank as matrix_rank, smith_normal_form, solve_rational, to_integer_vec,
    vec_cross3, vec_dot, vec_is_zero, vec_neg, vec_primitive, Int, IntMatrix, IntVec, Rat,
};
use crate::polytope::LatticePolytope;

/// Validation failure for a fan, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanError {
    UnsupportedRank(usize),
    RayArity { ray: usize },
    ZeroRay { ray: usize },
    NonPrimitiveRay { ray: usize },
    DuplicateRay { first: usize, second: usize },
    NoCones,
    ConeIndexOutOfRange { cone: usize, index: usize },
    RepeatedIndexInCone { cone: usize },
    DuplicateCone { first: usize, second: usize },
    ConeNotFullDimensional { cone: usize },
    ConeNotPointed { cone: usize },
    /// A listed generator is a positive combination of the cone's other
    /// generators, so it is not a ray of that cone.
    NonExtremeConeRay { cone: usize, ray: usize },
    UnusedRay { ray: usize },
    /// A codimension-one face lies in `count` maximal cones instead of two.
    WallCount { wall: Vec<usize>, count: usize },
    /// Two cones meet a common wall from the same side, so they overlap.
    WallSameSide { wall: Vec<usize> },
    Disconnected,
    /// The intersection of two cones is not a face of both; the witness ray
    /// lies in the face closure of one cone but not in the other.
    ImproperIntersection { cone_a: usize, cone_b: usize, witness: IntVec },
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::UnsupportedRank(r) => write!(f, "lattice rank {} not supported (expected 2 or 3)", r),
            FanError::RayArity { ray } => write!(f, "ray {} has the wrong number of coordinates", ray),
            FanError::ZeroRay { ray } => write!(f, "ray {} is zero", ray),
            FanError::NonPrimitiveRay { ray } => write!(f, "ray {} is not primitive", ray),
            FanError::DuplicateRay { first, second } => write!(f, "rays {} and {} coincide", first, second),
            FanError::NoCones => write!(f, "fan has no maximal cones"),
            FanError::ConeIndexOutOfRange { cone, index } => write!(f, "cone {} references missing ray {}", cone, index),
            FanError::RepeatedIndexInCone { cone } => write!(f, "cone {} repeats a ray index", cone),
            FanError::DuplicateCone { first, second } => write!(f, "cones {} and {} coincide", first, second),
            FanError::ConeNotFullDimensional { cone } => write!(f, "cone {} is not full-dimensional", cone),
            FanError::ConeNotPointed { cone } => write!(f, "cone {} contains a line", cone),
            FanError::NonExtremeConeRay { cone, ray } => write!(f, "ray {} is not extreme in cone {}", ray, cone),
            FanError::UnusedRay { ray } => write!(f, "ray {} lies in no maximal cone", ray),
            FanError::WallCount { wall, count } => write!(f, "wall {:?} lies in {} maximal cones instead of 2", wall, count),
            FanError::WallSameSide { wall } => write!(f, "two cones meet wall {:?} from the same side", wall),
            FanError::Disconnected => write!(f, "cone adjacency graph is disconnected"),
            FanError::ImproperIntersection { cone_a, cone_b, witness } => write!(
                f,
                "intersection of cones {} and {} is not a common face (witness ray {:?})",
                cone_a, cone_b, witness
            ),
        }
    }
}

/// Inward facet normals of the cone spanned by `gens`, each paired with the
/// indices (into `gens`) of its tight generators.
///
/// Requires the cone to be full-dimensional; the result is empty-normal
/// free, primitive, deduplicated and sorted. Exact in rank two and three:
/// every facet normal of a pointed cone is tight on `rank - 1` independent
/// generators, hence arises from a perpendicular (rank 2) or a cross
/// product (rank 3).
fn cone_facets(dim: usize, gens: &[IntVec]) -> Vec<(IntVec, Vec<usize>)> {
    let mut candidates: Vec<IntVec> = Vec::new();
    match dim {
        2 => {
            for g in gens {
                candidates.push(vec![-g[1].clone(), g[0].clone()]);
                candidates.push(vec![g[1].clone(), -g[0].clone()]);
            }
        }
        3 => {
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    let c = vec_cross3(&gens[i], &gens[j]);
                    if !vec_is_zero(&c) {
                        candidates.push(vec_neg(&c));
                        candidates.push(c);
                    }
                }
            }
        }
        _ => panic!("cone facets only implemented for rank 2 and 3"),
    }
    let mut out: BTreeMap<IntVec, Vec<usize>> = BTreeMap::new();
    for c in candidates {
        let Some(n) = vec_primitive(&c) else { continue };
        if gens.iter().any(|g| vec_dot(&n, g).is_negative()) {
            continue;
        }
        let tight: Vec<usize> = gens
            .iter()
            .enumerate()
            .filter(|(_, g)| vec_dot(&n, g).is_zero())
            .map(|(i, _)| i)
            .collect();
        let tight_rows: Vec<IntVec> = tight.iter().map(|&i| gens[i].clone()).collect();
        if matrix_rank(&IntMatrix::from_rows(&tight_rows)) == dim - 1 {
            out.insert(n, tight);
        }
    }
    out.into_iter().collect()
}

/// Extreme rays of the pointed cone `{x : <n, x> >= 0 for all n}` in rank
/// one to three, as primitive vectors, sorted.
///
/// The inequality system must describe a pointed cone (no line); lower
/// dimensional cones are fine. A ray is extreme iff its tight normals span
/// a hyperplane, so in these ranks all candidates arise from sign choices,
/// perpendiculars, or pairwise cross products of the normals.
pub fn extreme_rays_from_inequalities(dim: usize, normals: &[IntVec]) -> Vec<IntVec> {
    assert!((1..=3).contains(&dim), "rank must be 1, 2 or 3");
    let nonzero: Vec<IntVec> = normals.iter().filter(|n| !vec_is_zero(n)).cloned().collect();
    let mut candidates: Vec<IntVec> = Vec::new();
    match dim {
        1 => {
            candidates.push(vec![Int::one()]);
            candidates.push(vec![-Int::one()]);
        }
        2 => {
            for n in &nonzero {
                candidates.push(vec![-n[1].clone(), n[0].clone()]);
                candidates.push(vec![n[1].clone(), -n[0].clone()]);
            }
        }
        3 => {
            for i in 0..nonzero.len() {
                for j in i + 1..nonzero.len() {
                    let c = vec_cross3(&nonzero[i], &nonzero[j]);
                    if !vec_is_zero(&c) {
                        candidates.push(vec_neg(&c));
                        candidates.push(c);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    let mut out: BTreeSet<IntVec> = BTreeSet::new();
    for c in candidates {
        let Some(r) = vec_primitive(&c) else { continue };
        if nonzero.iter().any(|n| vec_dot(n, &r).is_negative()) {
            continue;
        }
        let tight: Vec<IntVec> = nonzero
            .iter()
            .filter(|n| vec_dot(n, &r).is_zero())
            .cloned()
            .collect();
        let tight_rank = if tight.is_empty() {
            0
        } else {
            matrix_rank(&IntMatrix::from_rows(&tight))
        };
        if tight_rank == dim - 1 {
            out.insert(r);
        }
    }
    out.into_iter().collect()
}

/// A codimension-one cone of a complete fan, spanned by the listed rays
/// and shared by exactly two maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub rays: Vec<usize>,
    pub cones: (usize, usize),
}

/// A complete fan. Construction validates completeness; see the module
/// documentation for the exact checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<IntVec>,
    /// Each maximal cone as sorted ray indices. Input order of the cone
    /// list is preserved.
    max_cones: Vec<Vec<usize>>,
    /// Per maximal cone: inward facet normals with the global indices of
    /// their tight rays.
    facets: Vec<Vec<(IntVec, Vec<usize>)>>,
}

impl Fan {
    pub fn new(
        rank: usize,
        rays: Vec<IntVec>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Arc<Fan>, FanError> {
        if !(2..=3).contains(&rank) {
            return Err(FanError::UnsupportedRank(rank));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(FanError::RayArity { ray: i });
            }
            if vec_is_zero(r) {
                return Err(FanError::ZeroRay { ray: i });
            }
            if vec_primitive(r).expect("nonzero") != *r {
                return Err(FanError::NonPrimitiveRay { ray: i });
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i] == rays[j] {
                    return Err(FanError::DuplicateRay { first: i, second: j });
                }
            }
        }
        if max_cones.is_empty() {
            return Err(FanError::NoCones);
        }
        let mut cones: Vec<Vec<usize>> = Vec::with_capacity(max_cones.len());
        for (ci, cone) in max_cones.iter().enumerate() {
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            if sorted.iter().any(|&i| i >= rays.len()) {
                let index = *sorted.iter().find(|&&i| i >= rays.len()).unwrap();
                return Err(FanError::ConeIndexOutOfRange { cone: ci, index });
            }
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(FanError::RepeatedIndexInCone { cone: ci });
            }
            cones.push(sorted);
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                if cones[i] == cones[j] {
                    return Err(FanError::DuplicateCone { first: i, second: j });
                }
            }
        }

        let mut facets: Vec<Vec<(IntVec, Vec<usize>)>> = Vec::with_capacity(cones.len());
        for (ci, cone) in cones.iter().enumerate() {
            let gens: Vec<IntVec> = cone.iter().map(|&i| rays[i].clone()).collect();
            if matrix_rank(&IntMatrix::from_rows(&gens)) != rank {
                return Err(FanError::ConeNotFullDimensional { cone: ci });
            }
            let local = cone_facets(rank, &gens);
            let normal_rows: Vec<IntVec> = local.iter().map(|(n, _)| n.clone()).collect();
            if matrix_rank(&IntMatrix::from_rows(&normal_rows)) != rank {
                return Err(FanError::ConeNotPointed { cone: ci });
            }
            for (li, &gi) in cone.iter().enumerate() {
                // Extreme generator: its tight facet normals span a
                // hyperplane.
                let tight: Vec<IntVec> = local
                    .iter()
                    .filter(|(_, t)| t.contains(&li))
                    .map(|(n, _)| n.clone())
                    .collect();
                let ok = !tight.is_empty()
                    && matrix_rank(&IntMatrix::from_rows(&tight)) == rank - 1;
                if !ok {
                    return Err(FanError::NonExtremeConeRay { cone: ci, ray: gi });
                }
            }
            facets.push(
                local
                    .into_iter()
                    .map(|(n, t)| {
                        let mut global: Vec<usize> = t.into_iter().map(|li| cone[li]).collect();
                        global.sort_unstable();
                        (n, global)
                    })
                    .collect(),
            );
        }

        let mut used = vec![false; rays.len()];
        for cone in &cones {
            for &i in cone {
                used[i] = true;
            }
        }
        if let Some(ray) = used.iter().position(|u| !u) {
            return Err(FanError::UnusedRay { ray });
        }

        // Wall regularity: each codimension-one face in exactly two cones,
        // on opposite sides.
        let mut walls: BTreeMap<Vec<usize>, Vec<(usize, IntVec)>> = BTreeMap::new();
        for (ci, cone_facets) in facets.iter().enumerate() {
            for (n, tight) in cone_facets {
                walls.entry(tight.clone()).or_default().push((ci, n.clone()));
            }
        }
        for (wall, sides) in &walls {
            if sides.len() != 2 {
                return Err(FanError::WallCount { wall: wall.clone(), count: sides.len() });
            }
            if sides[0].1 != vec_neg(&sides[1].1) {
                return Err(FanError::WallSameSide { wall: wall.clone() });
            }
        }

        // Adjacency connectivity across walls.
        let mut adjacent: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cones.len()];
        for sides in walls.values() {
            adjacent[sides[0].0].insert(sides[1].0);
            adjacent[sides[1].0].insert(sides[0].0);
        }
        let mut seen = vec![false; cones.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &n in &adjacent[c] {
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(FanError::Disconnected);
        }

        let fan = Fan { rank, rays, max_cones: cones, facets };

        // Pairwise intersections must be common faces; this rules out
        // overlaps that wall regularity alone misses.
        for a in 0..fan.max_cones.len() {
            for b in a + 1..fan.max_cones.len() {
                if let Some(witness) = fan.improper_intersection(a, b) {
                    return Err(FanError::ImproperIntersection { cone_a: a, cone_b: b, witness });
                }
            }
        }
        Ok(Arc::new(fan))
    }

    /// A ray of the smallest face of cone `a` containing the intersection
    /// with cone `b` that escapes the intersection, if any.
    fn improper_intersection(&self, a: usize, b: usize) -> Option<IntVec> {
        let mut combined: Vec<IntVec> =
            self.facets[a].iter().map(|(n, _)| n.clone()).collect();
        combined.extend(self.facets[b].iter().map(|(n, _)| n.clone()));
        let meet = extreme_rays_from_inequalities(self.rank, &combined);
        if meet.is_empty() {
            // Intersection is the origin, a face of every pointed cone.
            return None;
        }
        for (x, y) in [(a, b), (b, a)] {
            // Smallest face of x containing the intersection: impose
            // equality on every facet normal of x tight on all of it.
            let mut system: Vec<IntVec> =
                self.facets[x].iter().map(|(n, _)| n.clone()).collect();
            for (n, _) in &self.facets[x] {
                if meet.iter().all(|r| vec_dot(n, r).is_zero()) {
                    system.push(vec_neg(n));
                }
            }
            let face = extreme_rays_from_inequalities(self.rank, &system);
            for r in &face {
                let inside_y = self.facets[y]
                    .iter()
                    .all(|(n, _)| !vec_dot(n, r).is_negative());
                if !inside_y {
                    return Some(r.clone());
                }
            }
        }
        None
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Codimension-one cones with their two incident maximal cones,
    /// sorted by ray set.
    pub fn walls(&self) -> Vec<Wall> {
        let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, cone_facets) in self.facets.iter().enumerate() {
            for (_, tight) in cone_facets {
                map.entry(tight.clone()).or_default().push(ci);
            }
        }
        map.into_iter()
            .map(|(rays, cones)| {
                debug_assert_eq!(cones.len(), 2, "validated fan has two cones per wall");
                Wall { rays, cones: (cones[0], cones[1]) }
            })
            .collect()
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &IntVec {
        &self.rays[i]
    }

    /// Maximal cones as sorted ray indices, in input order.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Ray matrix with one row per ray.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays)
    }

    /// True iff `v` lies in the given maximal cone.
    pub fn cone_contains(&self, cone: usize, v: &[Int]) -> bool {
        self.facets[cone]
            .iter()
            .all(|(n, _)| !vec_dot(n, v).is_negative())
    }

    /// Some maximal cone containing `v`. Completeness guarantees one
    /// exists.
    pub fn cone_containing(&self, v: &[Int]) -> usize {
        (0..self.max_cones.len())
            .find(|&c| self.cone_contains(c, v))
            .expect("complete fan covers the whole space")
    }

    /// Index of the first non-simplicial maximal cone, if any.
    pub fn simplicial_violation(&self) -> Option<usize> {
        (0..self.max_cones.len()).find(|&c| self.max_cones[c].len() != self.rank)
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial_violation().is_none()
    }

    /// Index of the first maximal cone that is not unimodular, if any.
    pub fn smooth_violation(&self) -> Option<usize> {
        (0..self.max_cones.len()).find(|&c| {
            if self.max_cones[c].len() != self.rank {
                return true;
            }
            let gens: Vec<IntVec> =
                self.max_cones[c].iter().map(|&i| self.rays[i].clone()).collect();
            IntMatrix::from_rows(&gens).determinant().abs() != Int::one()
        })
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth_violation().is_none()
    }

    /// Local data for the canonical divisor; exists iff the variety is
    /// Gorenstein.
    pub fn gorenstein_data(self: &Arc<Self>) -> Result<Vec<IntVec>, CartierDefect> {
        ToricDivisor::canonical(self).cartier_data()
    }

    pub fn is_gorenstein(self: &Arc<Self>) -> bool {
        self.gorenstein_data().is_ok()
    }

    /// Value of the support function of a divisor with local data
    /// `cartier` at the lattice point `v`.
    pub fn support_value(&self, cartier: &[IntVec], v: &[Int]) -> Int {
        let c = self.cone_containing(v);
        -vec_dot(&cartier[c], v)
    }

    pub fn class_group(&self) -> ClassGroup {
        let snf = smith_normal_form(&self.ray_matrix());
        let p = self.rays.len();
        let diag = snf.diagonal();
        let mut moduli = vec![Int::zero(); p];
        for (i, d) in diag.iter().enumerate() {
            moduli[i] = d.clone();
        }
        let torsion: Vec<Int> = moduli.iter().filter(|d| **d > Int::one()).cloned().collect();
        let free_rank = moduli.iter().filter(|d| d.is_zero()).count();
        ClassGroup { proj: snf.u, moduli, torsion, free_rank }
    }
}

/// Divisor class group presented by a projection matrix and moduli, from
/// the cokernel of the ray matrix.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    proj: IntMatrix,
    /// Per projected coordinate: its order (1 kills it, 0 leaves it free).
    moduli: Vec<Int>,
    pub torsion: Vec<Int>,
    pub free_rank: usize,
}

/// A divisor class in normal form; equal classes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DivisorClass(pub IntVec);

impl ClassGroup {
    pub fn class_of(&self, coeffs: &[Int]) -> DivisorClass {
        let y = self.proj.mul_vec(coeffs);
        let z: IntVec = y
            .iter()
            .zip(&self.moduli)
            .map(|(v, m)| if m.is_zero() { v.clone() } else { v.mod_floor(m) })
            .collect();
        DivisorClass(z)
    }
}

/// Why a divisor fails to be Cartier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierDefect {
    pub cone: usize,
    /// The rational local data on that cone, when it exists but is not
    /// integral; `None` when the defining system is inconsistent.
    pub solution: Option<Vec<Rat>>,
}

impl fmt::Display for CartierDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.solution {
            Some(s) => write!(f, "local data on cone {} is non-integral: {:?}", self.cone, s),
            None => write!(f, "no local data exists on cone {}", self.cone),
        }
    }
}

/// Torus-invariant divisor `sum a_v D_v` on a fixed complete fan.
#[derive(Clone, Debug)]
pub struct ToricDivisor {
    fan: Arc<Fan>,
    coeffs: IntVec,
    /// Local data per maximal cone, solved on first use. Nef checks,
    /// ampleness checks and polytope construction all start from it.
    cartier: OnceCell<Result<Vec<IntVec>, CartierDefect>>,
}

/// Equality is by fan and coefficients; the lazily solved local data is
/// determined by them.
impl PartialEq for ToricDivisor {
    fn eq(&self, other: &Self) -> bool {
        self.fan == other.fan && self.coeffs == other.coeffs
    }
}

impl Eq for ToricDivisor {}

impl ToricDivisor {
    pub fn new(fan: &Arc<Fan>, coeffs: IntVec) -> Self {
        assert_eq!(coeffs.len(), fan.rays().len(), "one coefficient per ray");
        ToricDivisor { fan: Arc::clone(fan), coeffs, cartier: OnceCell::new() }
    }

    pub fn from_i64(fan: &Arc<Fan>, coeffs: &[i64]) -> Self {
        Self::new(fan, coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(fan: &Arc<Fan>) -> Self {
        Self::new(fan, vec![Int::zero(); fan.rays().len()])
    }

    /// The prime divisor attached to one ray.
    pub fn boundary(fan: &Arc<Fan>, ray: usize) -> Self {
        let mut coeffs = vec![Int::zero(); fan.rays().len()];
        coeffs[ray] = Int::one();
        Self::new(fan, coeffs)
    }

    /// The canonical divisor `-sum D_v`.
    pub fn canonical(fan: &Arc<Fan>) -> Self {
        Self::new(fan, vec![-Int::one(); fan.rays().len()])
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, ray: usize) -> &Int {
        &self.coeffs[ray]
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::new(&self.fan, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Section polytope `P(D)`. Bounded because the fan is complete; the
    /// inequality sources are ray indices.
    pub fn polytope(&self) -> LatticePolytope {
        let ineqs: Vec<(IntVec, Int)> = self
            .fan
            .rays()
            .iter()
            .zip(&self.coeffs)
            .map(|(v, a)| (v.clone(), a.clone()))
            .collect();
        // Nef fast path. The local data are then feasible, and each is a
        // vertex: its cone's ray inequalities are tight and span. Every
        // vertex arises this way, since a functional interior to both a
        // maximal cone and the vertex's normal cone is minimized at the
        // cone's local datum and uniquely at the vertex. So the vertex
        // search over ray triples can be skipped.
        if let Ok(data) = self.cartier_data() {
            let feasible = data
                .iter()
                .all(|m| ineqs.iter().all(|(v, a)| !(vec_dot(m, v) + a).is_negative()));
            if feasible {
                return LatticePolytope::from_nef_vertices(self.fan.rank(), &ineqs, &data)
                    .expect("fan rank is a supported dimension");
            }
        }
        LatticePolytope::from_inequalities(self.fan.rank(), &ineqs)
            .expect("complete fan makes section polytopes bounded")
    }

    /// Local data `m_s` per maximal cone with `<m_s, v> = -a_v` on the
    /// cone's rays.
    pub fn cartier_data(&self) -> Result<Vec<IntVec>, CartierDefect> {
        self.cartier
            .get_or_init(|| {
                let mut data = Vec::with_capacity(self.fan.max_cones().len());
                for (ci, cone) in self.fan.max_cones().iter().enumerate() {
                    let rows: Vec<IntVec> =
                        cone.iter().map(|&i| self.fan.ray(i).clone()).collect();
                    let rhs: IntVec = cone.iter().map(|&i| -self.coeffs[i].clone()).collect();
                    let m = IntMatrix::from_rows(&rows);
                    match solve_rational(&m, &rhs) {
                        None => return Err(CartierDefect { cone: ci, solution: None }),
                        Some(sol) => {
                            if all_integral(&sol) {
                                data.push(to_integer_vec(&sol));
                            } else {
                                return Err(CartierDefect { cone: ci, solution: Some(sol) });
                            }
                        }
                    }
                }
                Ok(data)
            })
            .clone()
    }

    pub fn is_cartier(&self) -> bool {
        self.cartier_data().is_ok()
    }

    /// Nef: Cartier with every local inequality `<m_s, v> + a_v >= 0`
    /// satisfied across all rays of the fan.
    pub fn is_nef(&self) -> bool {
        let Ok(data) = self.cartier_data() else { return false };
        data.iter().all(|m| {
            self.fan
                .rays()
                .iter()
                .zip(&self.coeffs)
                .all(|(v, a)| !(vec_dot(m, v) + a).is_negative())
        })
    }

    /// Ample: Cartier with the local inequality strict on every ray
    /// outside the cone.
    pub fn is_ample(&self) -> bool {
        let Ok(data) = self.cartier_data() else { return false };
        self.fan.max_cones().iter().zip(&data).all(|(cone, m)| {
            self.fan.rays().iter().enumerate().all(|(ri, v)| {
                let slack = vec_dot(m, v) + &self.coeffs[ri];
                if cone.contains(&ri) {
                    slack.is_zero()
                } else {
                    slack.is_positive()
                }
            })
        })
    }

    /// Big: the section polytope is full-dimensional.
    pub fn is_big(&self) -> bool {
        self.polytope().dim() == Some(self.fan.rank())
    }

    /// On a complete toric variety a divisor is basepoint-free iff it is
    /// nef.
    pub fn is_basepoint_free(&self) -> bool {
        self.is_nef()
    }

    pub fn class(&self, group: &ClassGroup) -> DivisorClass {
        group.class_of(&self.coeffs)
    }

    pub fn is_linearly_equivalent(&self, other: &ToricDivisor) -> bool {
        assert!(self.same_fan(other), "divisors live on different fans");
        let group = self.fan.class_group();
        self.class(&group) == other.class(&group)
    }

    fn same_fan(&self, other: &ToricDivisor) -> bool {
        Arc::ptr_eq(&self.fan, &other.fan) || self.fan == other.fan
    }
}

impl Add for &ToricDivisor {
    type Output = ToricDivisor;
    fn add(self, rhs: &ToricDivisor) -> ToricDivisor {
        assert!(self.same_fan(rhs), "divisors live on different fans");
        ToricDivisor::new(
            &self.fan,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &ToricDivisor {
    type Output = ToricDivisor;
    fn sub(self, rhs: &ToricDivisor) -> ToricDivisor {
        assert!(self.same_fan(rhs), "divisors live on different fans");
        ToricDivisor::new(
            &self.fan,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &ToricDivisor {
    type Output = ToricDivisor;
    fn neg(self) -> ToricDivisor {
        ToricDivisor::new(&self.fan, vec_neg(&self.coeffs))
    }
}
