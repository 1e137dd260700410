//! Exact-arithmetic computational geometry on toric threefolds.
//!
//! Everything here runs over arbitrary-precision integers and rationals;
//! there is no floating point anywhere. The crate is `no_std` (it only
//! needs `alloc`) so the algorithmic core stays portable; IO, file formats
//! and the command-line interface live in the companion `toric-cli` crate.
//!
//! The modules build on each other in a straight line:
//!
//! * [`lattice`]: integer matrices, Smith normal form, kernels, exact
//!   linear solving.
//! * [`polytope`]: rational convex polytopes with lattice data (vertices,
//!   lattice points, facets, volumes, Minkowski sums).
//! * [`toric`]: complete fans, torus-invariant divisors, Cartier data,
//!   nef/ample/big predicates, class groups, section polytopes.
//! * [`sections`]: section graphs of divisor configurations, the
//!   connected-sections property, IDP tests, fiber graphs and Markov-basis
//!   criteria.
//! * [`bounds`]: triple intersection numbers and genus lower bounds for
//!   curves on very general surfaces, plus the threshold-divisor
//!   constructions.
//! * [`hyperbolicity`]: certificates and refutations of algebraic
//!   hyperbolicity for parameterized families, with sweeps and ledgers.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod hyperbolicity;
pub mod lattice;
pub mod polytope;
pub mod sections;
pub mod toric;
