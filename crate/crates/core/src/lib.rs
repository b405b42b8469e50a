//! Exact solvers, counting-bound verifiers and an upper-bound construction
//! for queen domination on the `n x n` board.
//!
//! * [`board`]: geometry, lines, coverage and the domination predicate.
//! * [`visibility`]: the queen visibility graph and its connectivity.
//! * [`annulus`]: sentinel/annulus decomposition and the counting inequalities.
//! * [`bounds`]: closed-form lower and upper bounds.
//! * [`construction`]: the three-block diagonal placement and its validator.
//! * [`solver`]: exhaustive and branch-and-bound minimum search.
//! * [`cli`]: the `qdom` command line and its results ledger.

pub mod annulus;
pub mod board;
pub mod bounds;
pub mod cli;
pub mod construction;
pub mod error;
pub mod solver;
pub mod text;
pub mod visibility;

pub use board::{BoardGeometry, LineId, LineKind, Placement, Square};
pub use error::{Error, Result};
pub use solver::{Method, SolveRequest, SolveResult, Variant};
