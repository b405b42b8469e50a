//! Exact minimum queen counts for every domination variant.
//!
//! Two independent methods share one driver: sizes are tried in increasing
//! order and, for each size, the candidate sets are split by their
//! lowest-index queen. That queen is restricted to the orbit minima of the
//! eight board symmetries, which keeps the search complete. The split is also
//! the unit of parallel work.
//!
//! * [`Method::Exhaustive`] enumerates every subset and checks it with the
//!   placement-level predicates in [`crate::board`] and [`crate::visibility`].
//! * [`Method::BranchAndBound`] runs a bitboard depth-first search with
//!   coverage pruning and starts at the closed-form lower bound.

mod bb;
mod driver;
mod exhaustive;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::board::{dominates, Placement};
use crate::error::{Error, Result};
use crate::visibility::{build_visibility, component_count, every_queen_sees_another};

pub use bb::MAX_BITBOARD_SIDE;

/// Largest board the exhaustive oracle accepts unless overridden.
pub const EXHAUSTIVE_LIMIT: usize = 7;
/// Largest board branch-and-bound accepts unless overridden.
pub const BRANCH_AND_BOUND_LIMIT: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Every empty square covered.
    Simple,
    /// Dominating, and the visibility graph is connected.
    Connected,
    /// Dominating, and every queen sees another queen.
    Total,
    /// Dominating, and the queens split into at most `k` connected classes.
    Kcolored(usize),
}

impl Variant {
    /// Builds a variant from its name and the color count (used by `kcolored` only).
    pub fn parse(name: &str, k: Option<usize>) -> Result<Variant> {
        let v = match name {
            "simple" => Variant::Simple,
            "connected" => Variant::Connected,
            "total" => Variant::Total,
            "kcolored" => Variant::Kcolored(k.unwrap_or(1)),
            other => {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("unknown variant `{other}`"),
                })
            }
        };
        if v == Variant::Kcolored(0) {
            return Err(Error::InvalidColorCount);
        }
        Ok(v)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Simple => "simple",
            Variant::Connected => "connected",
            Variant::Total => "total",
            Variant::Kcolored(_) => "kcolored",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            Variant::Kcolored(k) => Some(*k),
            _ => None,
        }
    }

    /// The closed-form lower bound used as the first size tried by branch-and-bound.
    pub fn lower_bound(&self, n: usize) -> usize {
        use crate::bounds::*;
        match *self {
            Variant::Simple => lb_simple(n),
            Variant::Total => lb_simple(n).max(2),
            Variant::Connected => lb_connected(n),
            Variant::Kcolored(k) => lb_kcolored(n, k).unwrap_or(1),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Kcolored(k) => write!(f, "kcolored(k={k})"),
            v => f.write_str(v.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    #[serde(rename = "bb")]
    BranchAndBound,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::BranchAndBound => "bb",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "bb" | "branch_and_bound" => Ok(Method::BranchAndBound),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown method `{other}`"),
            }),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveRequest {
    pub n: usize,
    pub variant: Variant,
    pub method: Method,
    pub max_size: Option<usize>,
    pub node_limit: Option<u64>,
    pub workers: usize,
    /// Overrides the per-method board size limit.
    pub board_limit: Option<usize>,
}

impl SolveRequest {
    pub fn new(n: usize, variant: Variant) -> Self {
        SolveRequest {
            n,
            variant,
            method: Method::BranchAndBound,
            max_size: None,
            node_limit: None,
            workers: 1,
            board_limit: None,
        }
    }

    pub fn method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn max_size(mut self, max_size: usize) -> Self {
        self.max_size = Some(max_size);
        self
    }

    pub fn node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn board_limit(mut self, limit: usize) -> Self {
        self.board_limit = Some(limit);
        self
    }

    pub fn solve(&self) -> Result<SolveResult> {
        solve(self)
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub n: usize,
    pub variant: Variant,
    pub method: Method,
    /// The minimum, when found.
    pub value: Option<usize>,
    pub witness: Option<Placement>,
    /// Every size below this was searched completely without a feasible placement.
    pub lower_bound: usize,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub proven_optimal: bool,
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "n={} variant={} value={}", self.n, self.variant, v)?,
            None => write!(
                f,
                "n={} variant={} value=unknown (>= {})",
                self.n, self.variant, self.lower_bound
            )?,
        }
        write!(
            f,
            " method={} nodes={} elapsed={:.3}s proven_optimal={}",
            self.method,
            self.nodes_explored,
            self.elapsed.as_secs_f64(),
            self.proven_optimal
        )
    }
}

/// Whether `placement` meets the requirements of `variant`.
pub fn feasible(placement: &Placement, variant: Variant) -> bool {
    if !dominates(placement) {
        return false;
    }
    let graph = build_visibility(placement);
    match variant {
        Variant::Simple => true,
        Variant::Connected => component_count(&graph).is_ok_and(|c| c == 1),
        Variant::Total => every_queen_sees_another(&graph).unwrap_or(false),
        Variant::Kcolored(k) => component_count(&graph).is_ok_and(|c| c <= k),
    }
}

/// Fewest classes the queens can be split into with each class connected.
///
/// Equals the number of components of the visibility graph: a class cannot
/// span two components, and each component is itself a valid class.
pub fn min_colors(placement: &Placement) -> Result<usize> {
    component_count(&build_visibility(placement))
}

pub fn solve(req: &SolveRequest) -> Result<SolveResult> {
    if req.n == 0 {
        return Err(Error::EmptyBoard);
    }
    if req.variant == Variant::Kcolored(0) {
        return Err(Error::InvalidColorCount);
    }
    match req.method {
        Method::Exhaustive => {
            check_limit(req, EXHAUSTIVE_LIMIT.min(MAX_BITBOARD_SIDE), "exhaustive")?;
            exhaustive::solve(req)
        }
        Method::BranchAndBound => {
            check_limit(req, BRANCH_AND_BOUND_LIMIT, "branch-and-bound")?;
            bb::solve(req)
        }
    }
}

fn check_limit(req: &SolveRequest, default: usize, method: &'static str) -> Result<()> {
    let limit = req.board_limit.unwrap_or(default).min(MAX_BITBOARD_SIDE);
    if req.n > limit {
        return Err(Error::BoardTooLarge {
            n: req.n,
            limit,
            method,
        });
    }
    Ok(())
}
