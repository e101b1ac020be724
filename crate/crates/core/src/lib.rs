//! Analysis toolkit for d-regular graphs centered on the small-set bipartite
//! density condition: exact and heuristic certification, random-walk mixing
//! measurement, spectral cross-checks, and planted counterexample generators.
//!
//! Modules:
//! - [`graph`]: immutable regular graphs, vertex sets, exact set-pair counting.
//! - [`io`]: the edge-list interchange format.
//! - [`spectral`]: eigenvalues of P = A/d and the classical bound checks.
//! - [`density`]: certify or refute the density condition, minimize witnesses.
//! - [`walk`]: exact walk evolution, mixing times, and the mixing-bound audits.
//! - [`construct`]: seeded generators including the planted-dense-pair families.

pub mod construct;
pub mod density;
pub mod graph;
pub mod io;
pub mod spectral;
pub mod walk;

pub use graph::{RegularGraph, SetPair, VertexSet};
