//! Rational convex polytopes with lattice data, in ambient dimension at
//! most three.
//!
//! A [`LatticePolytope`] is built from a finite list of halfspaces
//! `<n, u> + c >= 0` with integer data. Emptiness, boundedness, vertices
//! and the facet-defining (irredundant) inequalities are computed up
//! front; the lattice point list is scanned on first use and cached.
//! Every computation is exact.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{
    int, integer_kernel, rank, solve_unique_rational, vec_content, vec_cross3,
    vec_dot, vec_is_zero, vec_neg, vec_primitive, Int, IntMatrix, IntVec, Rat,
};

/// A closed halfspace `<normal, u> + offset >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub normal: IntVec,
    pub offset: Int,
    /// Index of this inequality in the caller's input list. Survives
    /// redundancy elimination so facets can be traced back (e.g. to fan
    /// rays).
    pub source: usize,
}

impl Inequality {
    pub fn eval_int(&self, u: &[Int]) -> Int {
        vec_dot(&self.normal, u) + &self.offset
    }

    pub fn eval_rat(&self, u: &[Rat]) -> Rat {
        let mut acc = Rat::from_integer(self.offset.clone());
        for (n, x) in self.normal.iter().zip(u) {
            acc += Rat::from_integer(n.clone()) * x;
        }
        acc
    }

    /// Canonical key identifying the halfspace up to positive scaling.
    fn dedup_key(&self) -> (IntVec, Rat) {
        let g = vec_content(&self.normal);
        let prim: IntVec = self.normal.iter().map(|x| x / &g).collect();
        (prim, Rat::new(self.offset.clone(), g))
    }
}

/// A facet of a full-dimensional polytope.
#[derive(Clone, Debug)]
pub struct Facet {
    /// Index into the caller's original inequality list.
    pub source: usize,
    pub normal: IntVec,
    pub offset: Int,
    /// Lattice points lying on the facet.
    pub points: Vec<IntVec>,
    /// Lattice points in the relative interior of the facet.
    pub interior_points: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeError {
    /// The inequality system admits an unbounded direction.
    Unbounded { direction: IntVec },
    /// Operation requires a full-dimensional polytope.
    NotFullDimensional,
    /// Ambient dimensions of the operands disagree.
    DimensionMismatch,
    /// Only ambient dimensions 1..=3 are supported.
    UnsupportedDimension(usize),
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::Unbounded { direction } => {
                write!(f, "unbounded in direction {:?}", direction)
            }
            PolytopeError::NotFullDimensional => {
                write!(f, "operation requires a full-dimensional polytope")
            }
            PolytopeError::DimensionMismatch => write!(f, "ambient dimension mismatch"),
            PolytopeError::UnsupportedDimension(d) => {
                write!(f, "ambient dimension {} not supported (expected 1..=3)", d)
            }
        }
    }
}

/// Bounded rational polytope with cached lattice data.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    ambient: usize,
    /// Irredundant inequalities when full-dimensional; for lower-dimensional
    /// polytopes the deduplicated input system is kept as-is.
    ineqs: Vec<Inequality>,
    vertices: Vec<Vec<Rat>>,
    /// Scanned on first use; volume and vertex queries never pay for it.
    lattice_pts: OnceCell<Vec<IntVec>>,
    /// Affine dimension; `None` when empty.
    dim: Option<usize>,
}

impl LatticePolytope {
    /// Builds the polytope cut out by `<n_i, u> + c_i >= 0`.
    ///
    /// Empty polytopes are fine; unbounded systems are an error (with a
    /// witness direction). Inequalities that cannot support a facet are
    /// dropped, but their input indices remain visible through
    /// [`Facet::source`] on the survivors.
    pub fn from_inequalities(
        ambient: usize,
        ineqs: &[(IntVec, Int)],
    ) -> Result<Self, PolytopeError> {
        if ambient == 0 || ambient > 3 {
            return Err(PolytopeError::UnsupportedDimension(ambient));
        }
        let mut kept: Vec<Inequality> = Vec::new();
        let mut trivially_empty = false;
        for (idx, (n, c)) in ineqs.iter().enumerate() {
            assert_eq!(n.len(), ambient, "inequality arity mismatch");
            if vec_is_zero(n) {
                if c.is_negative() {
                    trivially_empty = true;
                }
                continue;
            }
            kept.push(Inequality { normal: n.clone(), offset: c.clone(), source: idx });
        }
        if trivially_empty {
            return Ok(Self::empty(ambient));
        }
        // Deduplicate halfspaces equal up to positive scaling, keeping the
        // first occurrence.
        let mut seen = BTreeSet::new();
        kept.retain(|iq| seen.insert(iq.dedup_key()));

        if fourier_motzkin_empty(ambient, &kept) {
            return Ok(Self::empty(ambient));
        }
        if let Some(direction) = recession_direction(ambient, &kept) {
            return Err(PolytopeError::Unbounded { direction });
        }

        let vertices = enumerate_vertices(ambient, &kept);
        assert!(!vertices.is_empty(), "nonempty bounded polytope must have vertices");
        let dim = affine_dim(&vertices);

        if dim == Some(ambient) {
            // Keep exactly the facet-defining inequalities: those whose
            // tight vertex set has affine dimension ambient - 1.
            kept.retain(|iq| {
                let tight: Vec<Vec<Rat>> = vertices
                    .iter()
                    .filter(|v| iq.eval_rat(v).is_zero())
                    .cloned()
                    .collect();
                affine_dim(&tight) == Some(ambient - 1)
            });
        }

        Ok(LatticePolytope { ambient, ineqs: kept, vertices, lattice_pts: OnceCell::new(), dim })
    }

    /// Builds the polytope from its inequality system together with a
    /// known vertex superset, skipping the emptiness, boundedness and
    /// vertex searches.
    ///
    /// Every element of `vertices` must satisfy all inequalities, and
    /// every vertex of the cut-out polytope must appear in `vertices`
    /// (extra non-vertex points are filtered by the facet-incidence
    /// retention below only when full-dimensional; callers guarantee
    /// exactness). The construction is checked against
    /// [`Self::from_inequalities`] by property tests.
    pub(crate) fn from_nef_vertices(
        ambient: usize,
        ineqs: &[(IntVec, Int)],
        vertices: &[IntVec],
    ) -> Result<Self, PolytopeError> {
        if ambient == 0 || ambient > 3 {
            return Err(PolytopeError::UnsupportedDimension(ambient));
        }
        let mut kept: Vec<Inequality> = Vec::new();
        for (idx, (n, c)) in ineqs.iter().enumerate() {
            assert_eq!(n.len(), ambient, "inequality arity mismatch");
            if vec_is_zero(n) {
                assert!(!c.is_negative(), "known-feasible system");
                continue;
            }
            kept.push(Inequality { normal: n.clone(), offset: c.clone(), source: idx });
        }
        let mut seen = BTreeSet::new();
        kept.retain(|iq| seen.insert(iq.dedup_key()));

        // Integral vertices let the dimension and facet scans run in
        // plain integer arithmetic. Ratio and integer orderings agree, so
        // the sorted vertex list matches the generic construction's.
        let sorted: BTreeSet<IntVec> = vertices.iter().cloned().collect();
        let verts: Vec<IntVec> = sorted.into_iter().collect();
        debug_assert!(verts.iter().all(|v| kept.iter().all(|iq| !iq.eval_int(v).is_negative())));
        assert!(!verts.is_empty(), "nef polytope must have vertices");
        let dim = affine_dim_int(&verts);

        if dim == Some(ambient) {
            kept.retain(|iq| {
                let tight: Vec<IntVec> = verts
                    .iter()
                    .filter(|v| iq.eval_int(v).is_zero())
                    .cloned()
                    .collect();
                affine_dim_int(&tight) == Some(ambient - 1)
            });
        }

        let vertices: Vec<Vec<Rat>> = verts
            .into_iter()
            .map(|v| v.into_iter().map(Rat::from_integer).collect())
            .collect();
        Ok(LatticePolytope { ambient, ineqs: kept, vertices, lattice_pts: OnceCell::new(), dim })
    }

    fn empty(ambient: usize) -> Self {
        LatticePolytope {
            ambient,
            ineqs: Vec::new(),
            vertices: Vec::new(),
            lattice_pts: OnceCell::from(Vec::new()),
            dim: None,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Affine dimension, `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim.is_none()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == Some(self.ambient)
    }

    /// Vertices in sorted order (deterministic).
    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    /// True iff every vertex is a lattice point.
    pub fn has_lattice_vertices(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(Rat::is_integer))
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> &[IntVec] {
        self.lattice_pts
            .get_or_init(|| scan_lattice_points(self.ambient, &self.ineqs, &self.vertices))
    }

    pub fn lattice_point_set(&self) -> BTreeSet<IntVec> {
        self.lattice_points().iter().cloned().collect()
    }

    /// Retained inequalities (facet-defining when full-dimensional).
    pub fn inequalities(&self) -> &[Inequality] {
        &self.ineqs
    }

    pub fn contains_int(&self, u: &[Int]) -> bool {
        !self.is_empty() && self.ineqs.iter().all(|iq| !iq.eval_int(u).is_negative())
    }

    pub fn contains_rat(&self, u: &[Rat]) -> bool {
        !self.is_empty() && self.ineqs.iter().all(|iq| !iq.eval_rat(u).is_negative())
    }

    /// Translate by an integer vector.
    pub fn translate(&self, t: &[Int]) -> Self {
        assert_eq!(t.len(), self.ambient);
        let ineqs = self
            .ineqs
            .iter()
            .map(|iq| Inequality {
                normal: iq.normal.clone(),
                offset: &iq.offset - vec_dot(&iq.normal, t),
                source: iq.source,
            })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .zip(t)
                    .map(|(x, s)| x + Rat::from_integer(s.clone()))
                    .collect()
            })
            .collect();
        // Translate the point cache only if it has been scanned already.
        let lattice_pts = match self.lattice_pts.get() {
            Some(pts) => OnceCell::from(
                pts.iter()
                    .map(|p| p.iter().zip(t).map(|(x, s)| x + s).collect())
                    .collect::<Vec<IntVec>>(),
            ),
            None => OnceCell::new(),
        };
        LatticePolytope {
            ambient: self.ambient,
            ineqs,
            vertices,
            lattice_pts,
            dim: self.dim,
        }
    }

    /// The dilation `k * P` for `k >= 1`.
    pub fn dilate(&self, k: &Int) -> Result<Self, PolytopeError> {
        assert!(k.is_positive(), "dilation factor must be positive");
        let raw: Vec<(IntVec, Int)> = self
            .ineqs
            .iter()
            .map(|iq| (iq.normal.clone(), &iq.offset * k))
            .collect();
        Self::from_inequalities(self.ambient, &raw)
    }

    /// Facets with their lattice points and relative-interior lattice
    /// points. Requires a full-dimensional polytope.
    ///
    /// A lattice point is in the relative interior of a facet iff it is
    /// tight on that facet's inequality and strict on every other facet
    /// inequality.
    pub fn facets(&self) -> Result<Vec<Facet>, PolytopeError> {
        if !self.is_full_dimensional() {
            return Err(PolytopeError::NotFullDimensional);
        }
        let mut out = Vec::new();
        for (fi, iq) in self.ineqs.iter().enumerate() {
            let mut points = Vec::new();
            let mut interior = Vec::new();
            for p in self.lattice_points() {
                if !iq.eval_int(p).is_zero() {
                    continue;
                }
                points.push(p.clone());
                let strict = self
                    .ineqs
                    .iter()
                    .enumerate()
                    .all(|(gi, other)| gi == fi || other.eval_int(p).is_positive());
                if strict {
                    interior.push(p.clone());
                }
            }
            out.push(Facet {
                source: iq.source,
                normal: iq.normal.clone(),
                offset: iq.offset.clone(),
                points,
                interior_points: interior,
            });
        }
        Ok(out)
    }

    /// Edges as pairs of vertex indices, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.vertices.len() < 2 {
            return Vec::new();
        }
        let tight_sets: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| {
                self.ineqs
                    .iter()
                    .enumerate()
                    .filter(|(_, iq)| iq.eval_rat(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for a in 0..self.vertices.len() {
            for b in a + 1..self.vertices.len() {
                let common: Vec<IntVec> = tight_sets[a]
                    .iter()
                    .filter(|i| tight_sets[b].contains(i))
                    .map(|&i| self.ineqs[i].normal.clone())
                    .collect();
                if common.is_empty() {
                    continue;
                }
                let m = IntMatrix::from_rows(&common);
                if rank(&m) >= self.ambient - 1 {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Lattice length of an edge between two lattice vertices: the number
    /// of lattice points on the closed segment minus one. `None` if either
    /// endpoint is non-integral.
    pub fn edge_lattice_length(&self, edge: (usize, usize)) -> Option<Int> {
        let a = &self.vertices[edge.0];
        let b = &self.vertices[edge.1];
        if !a.iter().all(Rat::is_integer) || !b.iter().all(Rat::is_integer) {
            return None;
        }
        let d: IntVec = a
            .iter()
            .zip(b)
            .map(|(x, y)| (y - x).to_integer())
            .collect();
        Some(vec_content(&d))
    }

    /// Maximal lattice length over all edges. Zero for points; `None` if
    /// some vertex is non-integral.
    pub fn max_edge_lattice_length(&self) -> Option<Int> {
        if !self.has_lattice_vertices() {
            return None;
        }
        let mut best = Int::zero();
        for e in self.edges() {
            let l = self.edge_lattice_length(e).expect("lattice vertices checked");
            if l > best {
                best = l;
            }
        }
        Some(best)
    }

    /// Minimal lattice length over all edges; `None` if there are no edges
    /// or a vertex is non-integral.
    pub fn min_edge_lattice_length(&self) -> Option<Int> {
        if !self.has_lattice_vertices() {
            return None;
        }
        let mut best: Option<Int> = None;
        for e in self.edges() {
            let l = self.edge_lattice_length(e).expect("lattice vertices checked");
            if best.as_ref().is_none_or(|b| &l < b) {
                best = Some(l);
            }
        }
        best
    }

    /// Euclidean volume. Zero whenever the polytope is not
    /// full-dimensional (including the empty case).
    pub fn volume(&self) -> Rat {
        let zero = Rat::from_integer(Int::zero());
        if !self.is_full_dimensional() {
            return zero;
        }
        match self.ambient {
            1 => {
                let lo = self.vertices.iter().map(|v| v[0].clone()).min().unwrap();
                let hi = self.vertices.iter().map(|v| v[0].clone()).max().unwrap();
                hi - lo
            }
            2 => polygon_area(&self.vertices),
            3 => {
                // Clear denominators once; all facet scans and tetrahedron
                // determinants then run in plain integers, avoiding the
                // rational gcd normalization on every operation.
                let mut scale = Int::one();
                for v in &self.vertices {
                    for c in v {
                        scale = scale.lcm(c.denom());
                    }
                }
                let scaled: Vec<IntVec> = self
                    .vertices
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|c| (c * Rat::from_integer(scale.clone())).to_integer())
                            .collect()
                    })
                    .collect();
                let base = &scaled[0];
                let mut six_vol = Int::zero(); // 6 * scale^3 * volume
                for iq in &self.ineqs {
                    let offset = &iq.offset * &scale;
                    if (vec_dot(&iq.normal, base) + &offset).is_zero() {
                        continue; // facets through the base contribute no volume
                    }
                    let facet_vertices: Vec<&IntVec> = scaled
                        .iter()
                        .filter(|w| (vec_dot(&iq.normal, w) + &offset).is_zero())
                        .collect();
                    let ordered = order_facet_cycle(&iq.normal, &facet_vertices);
                    for k in 1..ordered.len().saturating_sub(1) {
                        six_vol += tetra_det_abs(base, ordered[0], ordered[k], ordered[k + 1]);
                    }
                }
                Rat::new(six_vol, int(6) * &scale * &scale * &scale)
            }
            _ => unreachable!("ambient dimension validated at construction"),
        }
    }

    /// Volume recomputed from lattice-point counts of dilations
    /// (independent oracle for [`volume`]).
    ///
    /// Counts `|t * P|` for `t = 0..=ambient`, interpolates the counting
    /// polynomial and returns its leading coefficient. Requires a bounded
    /// full-dimensional polytope.
    pub fn ehrhart_volume_oracle(&self) -> Result<Rat, PolytopeError> {
        if !self.is_full_dimensional() {
            return Err(PolytopeError::NotFullDimensional);
        }
        let n = self.ambient;
        let mut counts: Vec<Rat> = vec![Rat::from_integer(Int::one())]; // |0*P| = 1
        for t in 1..=n {
            let dilated = self.dilate(&int(t as i64))?;
            counts.push(Rat::from_integer(Int::from(dilated.lattice_points().len())));
        }
        // Leading coefficient of the degree-n interpolating polynomial
        // through (t, counts[t]) via Lagrange: sum counts[k] / prod_{j!=k}(k-j).
        let mut lead = Rat::from_integer(Int::zero());
        for (k, ck) in counts.iter().enumerate() {
            let mut denom = Int::one();
            for j in 0..=n {
                if j != k {
                    denom *= int(k as i64 - j as i64);
                }
            }
            lead += ck * Rat::new(Int::one(), denom);
        }
        Ok(lead)
    }

    /// Minkowski sum.
    ///
    /// Candidate facet normals of the sum are the facet normals of both
    /// summands plus, in ambient dimension three, cross products of edge
    /// directions (one edge from each summand); offsets come from the
    /// support functions. That candidate set provably covers every facet of
    /// the sum, and redundancy elimination at construction removes the rest.
    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<Self, PolytopeError> {
        if self.ambient != other.ambient {
            return Err(PolytopeError::DimensionMismatch);
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.ambient));
        }
        let mut normals: Vec<IntVec> = Vec::new();
        let push_normal = |n: IntVec, acc: &mut Vec<IntVec>| {
            if let Some(p) = vec_primitive(&n) {
                if !acc.contains(&p) {
                    acc.push(p);
                }
            }
        };
        for iq in self.ineqs.iter().chain(&other.ineqs) {
            push_normal(iq.normal.clone(), &mut normals);
        }
        if self.ambient == 3 {
            for da in edge_directions(self) {
                for db in edge_directions(other) {
                    let c = vec_cross3(&da, &db);
                    push_normal(c.clone(), &mut normals);
                    push_normal(vec_neg(&c), &mut normals);
                }
            }
        }
        let mut raw: Vec<(IntVec, Int)> = Vec::new();
        for n in normals {
            // Support of the sum: min over P plus min over Q of <n, .>.
            let m = support_min(self, &n) + support_min(other, &n);
            // Inequality <n, u> - m >= 0, cleared to integer data.
            let den = m.denom().clone();
            let scaled_n: IntVec = n.iter().map(|x| x * &den).collect();
            let offset = -m.numer().clone();
            raw.push((scaled_n, offset));
        }
        Self::from_inequalities(self.ambient, &raw)
    }
}

fn support_min(p: &LatticePolytope, n: &[Int]) -> Rat {
    p.vertices()
        .iter()
        .map(|v| {
            let mut acc = Rat::from_integer(Int::zero());
            for (c, x) in n.iter().zip(v) {
                acc += Rat::from_integer(c.clone()) * x;
            }
            acc
        })
        .min()
        .expect("nonempty polytope")
}

/// Primitive integer directions of all edges.
fn edge_directions(p: &LatticePolytope) -> Vec<IntVec> {
    let mut dirs = Vec::new();
    for (a, b) in p.edges() {
        let va = &p.vertices()[a];
        let vb = &p.vertices()[b];
        let diff: Vec<Rat> = va.iter().zip(vb).map(|(x, y)| y - x).collect();
        // Clear denominators, then reduce to a primitive vector.
        let mut den = Int::one();
        for d in &diff {
            den = den.lcm(d.denom());
        }
        let cleared: IntVec = diff
            .iter()
            .map(|d| (d * Rat::from_integer(den.clone())).to_integer())
            .collect();
        if let Some(prim) = vec_primitive(&cleared) {
            if !dirs.contains(&prim) {
                dirs.push(prim);
            }
        }
    }
    dirs
}

/// Exact emptiness test by Fourier-Motzkin elimination.
fn fourier_motzkin_empty(ambient: usize, ineqs: &[Inequality]) -> bool {
    // Work over rationals: rows are (normal, offset) meaning <n,u> + c >= 0.
    let mut rows: Vec<(Vec<Rat>, Rat)> = ineqs
        .iter()
        .map(|iq| {
            (
                iq.normal.iter().map(|x| Rat::from_integer(x.clone())).collect(),
                Rat::from_integer(iq.offset.clone()),
            )
        })
        .collect();
    for var in (0..ambient).rev() {
        let mut lowers: Vec<(Vec<Rat>, Rat)> = Vec::new(); // coefficient > 0
        let mut uppers: Vec<(Vec<Rat>, Rat)> = Vec::new(); // coefficient < 0
        let mut rest: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for (n, c) in rows {
            if n[var].is_zero() {
                rest.push((n, c));
            } else if n[var].is_positive() {
                lowers.push((n, c));
            } else {
                uppers.push((n, c));
            }
        }
        for (ln, lc) in &lowers {
            for (un, uc) in &uppers {
                // Combine to eliminate `var`: scale lower by -u_coeff and
                // upper by l_coeff (both positive multiples).
                let a = -un[var].clone();
                let b = ln[var].clone();
                let n: Vec<Rat> = ln
                    .iter()
                    .zip(un)
                    .map(|(l, u)| l * &a + u * &b)
                    .collect();
                let c = lc * &a + uc * &b;
                rest.push((n, c));
            }
        }
        rows = rest;
    }
    rows.iter().any(|(n, c)| {
        debug_assert!(n.iter().all(Zero::is_zero));
        c.is_negative()
    })
}

/// A nonzero direction in the recession cone, if one exists.
fn recession_direction(ambient: usize, ineqs: &[Inequality]) -> Option<IntVec> {
    let normals: Vec<IntVec> = ineqs.iter().map(|iq| iq.normal.clone()).collect();
    if normals.is_empty() {
        let mut e = vec![Int::zero(); ambient];
        e[0] = Int::one();
        return Some(e);
    }
    let nm = IntMatrix::from_rows(&normals);
    // Lineality: any kernel vector of the normal matrix recedes both ways.
    if let Some(k) = integer_kernel(&nm).into_iter().next() {
        return Some(k);
    }
    // Pointed case: every extreme ray of {u : N u >= 0} is cut out by
    // ambient-1 independent tight normals, so in dimension <= 3 all
    // candidates arise from (generalized) cross products of normal pairs.
    let mut candidates: Vec<IntVec> = Vec::new();
    match ambient {
        1 => {
            candidates.push(vec![Int::one()]);
            candidates.push(vec![-Int::one()]);
        }
        2 => {
            for n in &normals {
                candidates.push(vec![-n[1].clone(), n[0].clone()]);
                candidates.push(vec![n[1].clone(), -n[0].clone()]);
            }
        }
        3 => {
            for i in 0..normals.len() {
                for j in i + 1..normals.len() {
                    let c = vec_cross3(&normals[i], &normals[j]);
                    if !vec_is_zero(&c) {
                        candidates.push(vec_neg(&c));
                        candidates.push(c);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    candidates.into_iter().find(|c| {
        !vec_is_zero(c) && normals.iter().all(|n| !vec_dot(n, c).is_negative())
    })
}

/// All vertices: solutions of `ambient` tight inequalities that satisfy the
/// whole system, deduplicated and sorted.
fn enumerate_vertices(ambient: usize, ineqs: &[Inequality]) -> Vec<Vec<Rat>> {
    let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let k = ineqs.len();
    let mut idx: Vec<usize> = (0..ambient).collect();
    if k < ambient {
        return Vec::new();
    }
    loop {
        let rows: Vec<IntVec> = idx.iter().map(|&i| ineqs[i].normal.clone()).collect();
        let rhs: IntVec = idx.iter().map(|&i| -ineqs[i].offset.clone()).collect();
        let m = IntMatrix::from_rows(&rows);
        if let Some(x) = solve_unique_rational(&m, &rhs) {
            if ineqs.iter().all(|iq| !iq.eval_rat(&x).is_negative()) {
                found.insert(x);
            }
        }
        // Advance the combination idx lexicographically.
        let mut pos = ambient;
        loop {
            if pos == 0 {
                return found.into_iter().collect();
            }
            pos -= 1;
            if idx[pos] + 1 <= k - (ambient - pos) {
                idx[pos] += 1;
                for p in pos + 1..ambient {
                    idx[p] = idx[p - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Affine dimension of a point set; `None` when empty.
fn affine_dim(points: &[Vec<Rat>]) -> Option<usize> {
    let first = points.first()?;
    if points.len() == 1 {
        return Some(0);
    }
    // Clear denominators of the differences and take the integer rank.
    let mut rows: Vec<IntVec> = Vec::new();
    for p in &points[1..] {
        let diff: Vec<Rat> = p.iter().zip(first).map(|(a, b)| a - b).collect();
        let mut den = Int::one();
        for d in &diff {
            den = den.lcm(d.denom());
        }
        rows.push(
            diff.iter()
                .map(|d| (d * Rat::from_integer(den.clone())).to_integer())
                .collect(),
        );
    }
    Some(rank(&IntMatrix::from_rows(&rows)))
}

/// [`affine_dim`] for integral points, skipping denominator clearing.
fn affine_dim_int(points: &[IntVec]) -> Option<usize> {
    let first = points.first()?;
    if points.len() == 1 {
        return Some(0);
    }
    let rows: Vec<IntVec> =
        points[1..].iter().map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    Some(rank(&IntMatrix::from_rows(&rows)))
}

/// Scan the vertex bounding box for lattice points satisfying all
/// inequalities. Returned sorted lexicographically.
fn scan_lattice_points(
    ambient: usize,
    ineqs: &[Inequality],
    vertices: &[Vec<Rat>],
) -> Vec<IntVec> {
    if vertices.is_empty() {
        return Vec::new();
    }
    let mut lo = Vec::with_capacity(ambient);
    let mut hi = Vec::with_capacity(ambient);
    for d in 0..ambient {
        let min = vertices.iter().map(|v| v[d].clone()).min().unwrap();
        let max = vertices.iter().map(|v| v[d].clone()).max().unwrap();
        lo.push(min.ceil().to_integer());
        hi.push(max.floor().to_integer());
    }
    let mut out = Vec::new();
    let mut cur: IntVec = lo.clone();
    'scan: loop {
        if ineqs.iter().all(|iq| !iq.eval_int(&cur).is_negative()) {
            out.push(cur.clone());
        }
        // Odometer increment over the box (last coordinate fastest would
        // break lex order, so increment from the end but iterate smallest
        // first: standard row-major odometer keeps lex sorting).
        let mut d = ambient;
        loop {
            if d == 0 {
                break 'scan;
            }
            d -= 1;
            if &cur[d] < &hi[d] {
                cur[d] += 1;
                for t in d + 1..ambient {
                    cur[t] = lo[t].clone();
                }
                break;
            }
        }
    }
    out
}

/// Area of a convex polygon given by its (unordered) vertices.
fn polygon_area(vertices: &[Vec<Rat>]) -> Rat {
    let ordered = order_polygon(vertices);
    let mut twice = Rat::from_integer(Int::zero());
    let k = ordered.len();
    for i in 0..k {
        let a = &ordered[i];
        let b = &ordered[(i + 1) % k];
        twice += &a[0] * &b[1] - &a[1] * &b[0];
    }
    let half = Rat::new(Int::one(), int(2));
    (twice * half).abs()
}

/// Orders 2-D points counterclockwise around their centroid, exactly.
fn order_polygon(vertices: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = Rat::from_integer(Int::from(vertices.len()));
    let cx: Rat = vertices.iter().map(|v| v[0].clone()).sum::<Rat>() / &n;
    let cy: Rat = vertices.iter().map(|v| v[1].clone()).sum::<Rat>() / &n;
    let mut pts: Vec<Vec<Rat>> = vertices.to_vec();
    let half_class = |p: &Vec<Rat>| -> u8 {
        let dy = &p[1] - &cy;
        let dx = &p[0] - &cx;
        // Half-plane split: angle in [0, pi) -> 0, [pi, 2pi) -> 1, starting
        // from the positive x-axis.
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    pts.sort_by(|p, q| {
        let hp = half_class(p);
        let hq = half_class(q);
        if hp != hq {
            return hp.cmp(&hq);
        }
        // Same half-plane: compare by cross product of the offsets.
        let px = &p[0] - &cx;
        let py = &p[1] - &cy;
        let qx = &q[0] - &cx;
        let qy = &q[1] - &cy;
        let cross = &px * &qy - &py * &qx;
        // Positive cross: p comes before q (counterclockwise).
        if cross.is_positive() {
            core::cmp::Ordering::Less
        } else if cross.is_negative() {
            core::cmp::Ordering::Greater
        } else {
            // Collinear with centroid: nearer point first (stable, exact).
            let dp = &px * &px + &py * &py;
            let dq = &qx * &qx + &qy * &qy;
            dp.cmp(&dq)
        }
    });
    pts
}

/// Orders coplanar integer points into a convex cycle by dropping the
/// coordinate axis along which `normal` is largest; that projection is
/// injective on the plane, and a linear image of a convex polygon keeps
/// its vertices in convex position.
fn order_facet_cycle<'a>(normal: &[Int], points: &[&'a IntVec]) -> Vec<&'a IntVec> {
    if points.len() <= 3 {
        return points.to_vec();
    }
    let drop = (0..3).max_by_key(|&j| normal[j].abs()).expect("nonzero normal");
    let (x, y) = match drop {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    // Centroid comparisons scaled by the point count stay integral: with
    // s = sum of shadows, the offset of p is n*p - s up to the positive
    // factor n.
    let n = Int::from(points.len());
    let sx: Int = points.iter().map(|p| p[x].clone()).sum();
    let sy: Int = points.iter().map(|p| p[y].clone()).sum();
    let mut order: Vec<&IntVec> = points.to_vec();
    let offsets = |p: &IntVec| (&p[x] * &n - &sx, &p[y] * &n - &sy);
    let half_class = |p: &IntVec| -> u8 {
        let (dx, dy) = offsets(p);
        // Half-plane split: angle in [0, pi) -> 0, [pi, 2pi) -> 1.
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    order.sort_by(|p, q| {
        let hp = half_class(p);
        let hq = half_class(q);
        if hp != hq {
            return hp.cmp(&hq);
        }
        let (px, py) = offsets(p);
        let (qx, qy) = offsets(q);
        let cross = &px * &qy - &py * &qx;
        if cross.is_positive() {
            core::cmp::Ordering::Less
        } else if cross.is_negative() {
            core::cmp::Ordering::Greater
        } else {
            // Collinear with the centroid: nearer point first.
            (&px * &px + &py * &py).cmp(&(&qx * &qx + &qy * &qy))
        }
    });
    order
}

/// Six times the volume of the tetrahedron `a b c d`, as a nonnegative
/// integer determinant.
fn tetra_det_abs(a: &[Int], b: &[Int], c: &[Int], d: &[Int]) -> Int {
    let e1: IntVec = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let e2: IntVec = c.iter().zip(a).map(|(x, y)| x - y).collect();
    let e3: IntVec = d.iter().zip(a).map(|(x, y)| x - y).collect();
    let det = &e1[0] * (&e2[1] * &e3[2] - &e2[2] * &e3[1])
        - &e1[1] * (&e2[0] * &e3[2] - &e2[2] * &e3[0])
        + &e1[2] * (&e2[0] * &e3[1] - &e2[1] * &e3[0]);
    det.abs()
}
