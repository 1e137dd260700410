//! Connectivity of section configurations.
//!
//! For a divisor `D` and auxiliary divisors `E_1, ..., E_k`, the section
//! graph has one vertex for every lattice point of every `P(E_i)`, and an
//! edge between `u` in block `i` and `u'` in block `j` whenever
//! `(u + S_i)` meets `(u' + S_j)`, where `S_i` are the lattice points of
//! `P(D - E_i)`. The configuration has connected sections when this graph
//! is connected and the translates `Q_i + S_i` jointly cover the lattice
//! points of `P(D)`.
//!
//! The same condition can be decided in fiber coordinates: rewriting
//! sections as nonnegative integer vectors in a free cokernel turns block
//! connectivity into connectivity of a fiber graph under difference moves.
//! Both routes are implemented and cross-check each other.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::lattice::{smith_normal_form, vec_add, vec_sub, Int, IntMatrix, IntVec};
use crate::polytope::LatticePolytope;
use crate::toric::{CartierDefect, Fan, ToricDivisor};

/// Vertex of a [`SectionGraph`]: block index and position within the
/// block's sorted lattice point list.
pub type SectionVertex = (usize, usize);

/// The section graph of a configuration `(D; E_1, ..., E_k)`.
///
/// Adjacency is stored implicitly through the difference sets
/// `S_i - S_j`; neighbor queries and breadth-first search never enumerate
/// all vertex pairs.
#[derive(Clone, Debug)]
pub struct SectionGraph {
    blocks: Vec<Vec<IntVec>>,
    /// `offsets[i][j]` is the set `S_i - S_j`; a vertex `u` in block `i`
    /// is adjacent to `u + delta` in block `j` for each `delta` there.
    offsets: Vec<Vec<BTreeSet<IntVec>>>,
}

impl SectionGraph {
    pub fn new(d: &ToricDivisor, es: &[ToricDivisor]) -> Self {
        let blocks: Vec<Vec<IntVec>> = es
            .iter()
            .map(|e| e.polytope().lattice_points().to_vec())
            .collect();
        let sections: Vec<Vec<IntVec>> = es
            .iter()
            .map(|e| (d - e).polytope().lattice_points().to_vec())
            .collect();
        let mut offsets = Vec::with_capacity(es.len());
        for si in &sections {
            let mut row = Vec::with_capacity(es.len());
            for sj in &sections {
                let mut delta = BTreeSet::new();
                for a in si {
                    for b in sj {
                        delta.insert(vec_sub(a, b));
                    }
                }
                row.push(delta);
            }
            offsets.push(row);
        }
        SectionGraph { blocks, offsets }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &[IntVec] {
        &self.blocks[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn point(&self, v: SectionVertex) -> &IntVec {
        &self.blocks[v.0][v.1]
    }

    /// True iff the two distinct vertices share a section translate.
    pub fn adjacent(&self, a: SectionVertex, b: SectionVertex) -> bool {
        if a == b {
            return false;
        }
        let diff = vec_sub(self.point(b), self.point(a));
        self.offsets[a.0][b.0].contains(&diff)
    }

    /// All edges, each listed once with its endpoints in vertex order.
    /// Quadratic in the vertex count; intended for small graphs.
    pub fn edges(&self) -> Vec<(SectionVertex, SectionVertex)> {
        let verts: Vec<SectionVertex> = self.vertices().collect();
        let mut out = Vec::new();
        for x in 0..verts.len() {
            for y in x + 1..verts.len() {
                if self.adjacent(verts[x], verts[y]) {
                    out.push((verts[x], verts[y]));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = SectionVertex> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| (0..b.len()).map(move |a| (i, a)))
    }

    /// Connected components, via breadth-first search over the difference
    /// sets. Each component is sorted.
    pub fn components(&self) -> Vec<Vec<SectionVertex>> {
        // Unvisited points per block, keyed by coordinates for O(log)
        // neighbor lookups.
        let mut unvisited: Vec<BTreeMap<IntVec, usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().enumerate().map(|(a, p)| (p.clone(), a)).collect())
            .collect();
        let mut components = Vec::new();
        loop {
            let Some(seed) = unvisited
                .iter()
                .enumerate()
                .find_map(|(i, m)| m.iter().next().map(|(p, &a)| (i, a, p.clone())))
            else {
                break;
            };
            unvisited[seed.0].remove(&seed.2);
            let mut component = alloc::vec![(seed.0, seed.1)];
            let mut queue = alloc::vec![(seed.0, seed.2)];
            while let Some((i, p)) = queue.pop() {
                for j in 0..self.blocks.len() {
                    for delta in &self.offsets[i][j] {
                        let q = vec_add(&p, delta);
                        if let Some(a) = unvisited[j].remove(&q) {
                            component.push((j, a));
                            queue.push((j, q));
                        }
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Outcome of the connected-sections test for `(D; E_1, ..., E_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedSectionsReport {
    pub vertex_count: usize,
    pub component_count: usize,
    /// Lattice points of `P(D)` missed by every translate `Q_i + S_i`.
    pub missing_from_span: Vec<IntVec>,
}

impl ConnectedSectionsReport {
    pub fn graph_connected(&self) -> bool {
        self.component_count <= 1
    }

    pub fn spanning(&self) -> bool {
        self.missing_from_span.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.graph_connected() && self.spanning()
    }
}

impl fmt::Display for ConnectedSectionsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices in {} component(s), {} span gap(s)",
            self.vertex_count,
            self.component_count,
            self.missing_from_span.len()
        )
    }
}

/// Lattice points of `P(D)` not covered by any `Q_i + S_i`.
pub fn span_deficit(d: &ToricDivisor, es: &[ToricDivisor]) -> Vec<IntVec> {
    let mut covered: BTreeSet<IntVec> = BTreeSet::new();
    for e in es {
        let q = e.polytope();
        let s = (d - e).polytope();
        for a in q.lattice_points() {
            for b in s.lattice_points() {
                covered.insert(vec_add(a, b));
            }
        }
    }
    d.polytope()
        .lattice_points()
        .iter()
        .filter(|p| !covered.contains(*p))
        .cloned()
        .collect()
}

/// Full connected-sections verification for `(D; E_1, ..., E_k)`.
pub fn has_connected_sections(d: &ToricDivisor, es: &[ToricDivisor]) -> ConnectedSectionsReport {
    let graph = SectionGraph::new(d, es);
    ConnectedSectionsReport {
        vertex_count: graph.vertex_count(),
        component_count: graph.components().len(),
        missing_from_span: span_deficit(d, es),
    }
}

/// First lattice point of `P(E + E')` that is not a sum of lattice points
/// of `P(E)` and `P(E')`, if any. Panics unless both divisors are nef,
/// which is what makes `P(E) + P(E') = P(E + E')`.
pub fn idp_gap(e: &ToricDivisor, eprime: &ToricDivisor) -> Option<IntVec> {
    assert!(
        e.is_nef() && eprime.is_nef(),
        "decomposition property is tested for nef divisors only"
    );
    let qe = e.polytope();
    let qp = eprime.polytope();
    let mut sums: BTreeSet<IntVec> = BTreeSet::new();
    for a in qe.lattice_points() {
        for b in qp.lattice_points() {
            sums.insert(vec_add(a, b));
        }
    }
    (e + eprime)
        .polytope()
        .lattice_points()
        .iter()
        .find(|p| !sums.contains(*p))
        .cloned()
}

/// Integer decomposition property of the nef pair `(E, E')`.
pub fn is_idp(e: &ToricDivisor, eprime: &ToricDivisor) -> bool {
    idp_gap(e, eprime).is_none()
}

/// True iff every ray is a signed unit vector or a difference of two unit
/// vectors. Section polytopes of nef divisors on such a fan have all their
/// facet normals among these directions, a class closed under Minkowski
/// sums and known to satisfy the decomposition property pairwise.
pub fn alcoved_fan_check(fan: &Fan) -> bool {
    fan.rays().iter().all(|r| {
        let pos = r.iter().filter(|x| x.is_positive()).count();
        let neg = r.iter().filter(|x| x.is_negative()).count();
        r.iter().all(|x| x.abs() <= Int::one()) && pos <= 1 && neg <= 1
    })
}

/// Failure to set up fiber coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordinateError {
    /// The auxiliary vectors are not a lattice basis.
    NotABasis,
    /// An auxiliary vector coincides with a fan ray.
    BasisMeetsRays { index: usize },
    /// The divisor whose class was requested is not Cartier.
    NotCartier(CartierDefect),
}

impl fmt::Display for CoordinateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordinateError::NotABasis => write!(f, "auxiliary vectors are not a lattice basis"),
            CoordinateError::BasisMeetsRays { index } => {
                write!(f, "auxiliary vector {} coincides with a fan ray", index)
            }
            CoordinateError::NotCartier(d) => write!(f, "divisor is not Cartier: {}", d),
        }
    }
}

/// Fiber coordinates for section polytopes.
///
/// The combined evaluation map `m -> (<w_i, m>, <v_rho, m>)` over a chosen
/// auxiliary lattice basis `w_1..w_r` and the fan rays has a free cokernel
/// (the basis rows alone are unimodular). Sections of a Cartier divisor
/// `D` then biject with the nonnegative integer points of the fiber of the
/// cokernel projection over a class `b(D)`.
#[derive(Clone, Debug)]
pub struct SectionCoordinates {
    fan: Arc<Fan>,
    basis: Vec<IntVec>,
    /// Evaluation matrix: basis rows, then ray rows.
    iota: IntMatrix,
    /// Projection of the ambient integer space onto the free cokernel.
    proj: IntMatrix,
}

impl SectionCoordinates {
    pub fn new(fan: &Arc<Fan>, basis: &[IntVec]) -> Result<Self, CoordinateError> {
        let rank = fan.rank();
        if basis.len() != rank {
            return Err(CoordinateError::NotABasis);
        }
        let basis_m = IntMatrix::from_rows(basis);
        if basis_m.determinant().abs() != Int::one() {
            return Err(CoordinateError::NotABasis);
        }
        for (i, w) in basis.iter().enumerate() {
            if fan.rays().contains(w) {
                return Err(CoordinateError::BasisMeetsRays { index: i });
            }
        }
        let mut rows: Vec<IntVec> = basis.to_vec();
        rows.extend(fan.rays().iter().cloned());
        let iota = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&iota);
        assert!(
            snf.rank() == rank && snf.invariant_factors().is_empty(),
            "a unimodular basis block forces a free cokernel"
        );
        // Rows of U past the rank project onto the cokernel.
        let total = iota.rows();
        let proj_rows: Vec<IntVec> = (rank..total).map(|i| snf.u.row(i).to_vec()).collect();
        let proj = IntMatrix::from_rows(&proj_rows);
        Ok(SectionCoordinates { fan: Arc::clone(fan), basis: basis.to_vec(), iota, proj })
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    /// Ambient dimension of the fiber space.
    pub fn fiber_dim(&self) -> usize {
        self.iota.rows()
    }

    /// Rank of the free cokernel.
    pub fn class_dim(&self) -> usize {
        self.proj.rows()
    }

    /// Evaluation of the combined map at a lattice point.
    pub fn evaluate(&self, m: &[Int]) -> IntVec {
        self.iota.mul_vec(m)
    }

    /// The extended coefficient vector of a Cartier divisor: support
    /// function values on the auxiliary basis, then the ray coefficients.
    /// Every section of `D` satisfies the corresponding inequalities.
    pub fn extended_shift(&self, d: &ToricDivisor) -> Result<IntVec, CoordinateError> {
        let data = d.cartier_data().map_err(CoordinateError::NotCartier)?;
        let mut shift: IntVec = self
            .basis
            .iter()
            .map(|w| self.fan.support_value(&data, w))
            .collect();
        shift.extend(d.coeffs().iter().cloned());
        Ok(shift)
    }

    /// Class of a Cartier divisor in the free cokernel.
    pub fn class_of(&self, d: &ToricDivisor) -> Result<IntVec, CoordinateError> {
        Ok(self.proj.mul_vec(&self.extended_shift(d)?))
    }

    /// All nonnegative integer points of the fiber over `b`, sorted.
    ///
    /// The fiber is parametrized by lattice points of a polytope in the
    /// original lattice, so enumeration is three-dimensional regardless of
    /// the fiber space dimension.
    pub fn fiber(&self, b: &[Int]) -> Vec<IntVec> {
        assert_eq!(b.len(), self.proj.rows());
        // Particular integer solution of proj * x0 = b. The projection is
        // onto (rows of a unimodular matrix), so one always exists.
        let snf = smith_normal_form(&self.proj);
        assert!(snf.rank() == self.proj.rows() && snf.invariant_factors().is_empty());
        let ub = snf.u.mul_vec(b);
        let mut y = alloc::vec![Int::zero(); self.proj.cols()];
        y[..ub.len()].clone_from_slice(&ub);
        let x0 = snf.v.mul_vec(&y);
        // Fiber = { x0 + iota * m : all coordinates nonnegative }.
        let ineqs: Vec<(IntVec, Int)> = (0..self.iota.rows())
            .map(|i| (self.iota.row(i).to_vec(), x0[i].clone()))
            .collect();
        let poly = LatticePolytope::from_inequalities(self.fan.rank(), &ineqs)
            .expect("ray rows bound the fiber polytope");
        let mut out: Vec<IntVec> = poly
            .lattice_points()
            .iter()
            .map(|m| vec_add(&x0, &self.iota.mul_vec(m)))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Nonzero pairwise differences of a fiber point set.
pub fn fiber_difference_moves(points: &[IntVec]) -> BTreeSet<IntVec> {
    let mut moves = BTreeSet::new();
    for a in points {
        for b in points {
            if a != b {
                moves.insert(vec_sub(a, b));
            }
        }
    }
    moves
}

/// Connectivity of the graph on `points` with steps from `moves`.
/// The empty graph and singletons count as connected.
pub fn fiber_graph_connected(points: &[IntVec], moves: &BTreeSet<IntVec>) -> bool {
    let Some(first) = points.first() else { return true };
    let mut unvisited: BTreeSet<IntVec> = points.iter().cloned().collect();
    unvisited.remove(first);
    let mut queue = alloc::vec![first.clone()];
    while let Some(p) = queue.pop() {
        for g in moves {
            let q = vec_add(&p, g);
            if unvisited.remove(&q) {
                queue.push(q);
            }
        }
    }
    unvisited.is_empty()
}

/// Markov-style sufficient check that `(E + E'; E)` has connected
/// sections: the pair must satisfy the decomposition property, and the
/// fiber of `b(E)` must be connected under difference moves taken from
/// the fiber of `b(E')`.
///
/// In fiber coordinates this is the definition of connected sections for a
/// single-divisor configuration, so it agrees exactly with
/// [`has_connected_sections`] on `(E + E'; E)`.
pub fn markov_criterion_check(
    coords: &SectionCoordinates,
    e: &ToricDivisor,
    eprime: &ToricDivisor,
) -> Result<bool, CoordinateError> {
    if !is_idp(e, eprime) {
        return Ok(false);
    }
    let fiber_e = coords.fiber(&coords.class_of(e)?);
    let fiber_ep = coords.fiber(&coords.class_of(eprime)?);
    let moves = fiber_difference_moves(&fiber_ep);
    Ok(fiber_graph_connected(&fiber_e, &moves))
}

/// Decides whether every lattice point of `P(D)` is reachable from every
/// other by steps from `moves` without leaving the polytope.
pub fn polytope_connected_by_moves(poly: &LatticePolytope, moves: &[IntVec]) -> bool {
    let mut all: BTreeSet<IntVec> = BTreeSet::new();
    for g in moves {
        all.insert(g.clone());
        all.insert(g.iter().map(|x| -x).collect());
    }
    fiber_graph_connected(poly.lattice_points(), &all)
}
