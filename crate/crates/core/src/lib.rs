//! Contextuality robustness of Kochen-Specker ray sets.
//!
//! The library is organised around one pipeline:
//!
//! 1. [`catalog`] supplies finite sets of rays (complex vectors with entries
//!    in the field Q(i, sqrt2), held exactly by [`scalar::ExactScalar`]).
//! 2. [`graph`] turns a ray set into its orthogonality graph and enumerates
//!    measurement contexts (maximum cliques of size omega = dimension).
//! 3. [`solver`] computes the figure of merit q_s(G): the minimum number of
//!    contextual vertices over all valid {ZERO, C, ONE} labelings, together
//!    with exact transversal and independence numbers.
//! 4. [`bounds`] evaluates the closed-form quantum upper bounds on the
//!    fraction of contextual outcomes, including the rank-r bound through
//!    the regularized incomplete beta function.
//! 5. [`montecarlo`] checks the geometric claims behind those bounds by
//!    seeded sampling of Haar-random states and rotations.
//!
//! All graph-side results are exact: rays are compared with exact field
//! arithmetic and the solvers are branch-and-bound searches with certified
//! optima. Floating point appears only in `bounds` (where closed forms are
//! cross-checked against exact rationals) and in `montecarlo`.

pub mod bitset;
pub mod bounds;
pub mod catalog;
pub mod graph;
pub mod montecarlo;
pub mod scalar;
pub mod solver;

pub use catalog::VectorSet;
pub use graph::OrthoGraph;
pub use scalar::ExactScalar;
pub use solver::{Label, Labeling, SolveResult};
