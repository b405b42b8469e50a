//! Closed-form lower and upper bounds on the number of queens.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ceil(a / b)` for `b > 0` and any sign of `a`.
fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

fn clamp_positive(v: i64) -> usize {
    v.max(1) as usize
}

/// `max(1, floor(n/2))` queens are needed to dominate the board.
pub fn lb_simple(n: usize) -> usize {
    clamp_positive(n as i64 / 2)
}

/// `max(1, ceil(2n/3 - 1))` queens for connected domination.
pub fn lb_connected(n: usize) -> usize {
    clamp_positive(lb_connected_raw(n))
}

fn lb_connected_raw(n: usize) -> i64 {
    ceil_div(2 * n as i64 - 3, 3)
}

/// `max(1, ceil((2n - k - 2)/3))` queens when the queens may form up to `k`
/// connected classes.
pub fn lb_kcolored(n: usize, k: usize) -> Result<usize> {
    if k < 1 {
        return Err(Error::InvalidColorCount);
    }
    Ok(clamp_positive(ceil_div(2 * n as i64 - k as i64 - 2, 3)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperBoundSource {
    /// `ceil(2n/3 + 1)`.
    Formula,
    /// Exact optimum computed by exhaustive search (boards below 4x4).
    ExactSmallBoard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: usize,
    pub source: UpperBoundSource,
}

/// `ceil(2n/3 + 1)` for `n >= 4`; the exact connected optimum below that.
pub fn ub_connected(n: usize) -> UpperBound {
    if n >= 4 {
        return UpperBound {
            value: ceil_div(2 * n as i64 + 3, 3) as usize,
            source: UpperBoundSource::Formula,
        };
    }
    let value = crate::solver::SolveRequest::new(n.max(1), crate::solver::Variant::Connected)
        .method(crate::solver::Method::Exhaustive)
        .solve()
        .ok()
        .and_then(|r| r.value)
        .expect("boards below 4x4 have a connected dominating queen");
    UpperBound {
        value,
        source: UpperBoundSource::ExactSmallBoard,
    }
}

/// Smallest `L >= 0` with `L >= (2n - L - 2)/3`, i.e. `ceil((n-1)/2)`. Not clamped.
pub fn fixpoint_lb(n: usize) -> usize {
    ceil_div(n as i64 - 1, 2).max(0) as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointTrace {
    /// Iterates, starting from the unclamped connected bound.
    pub trajectory: Vec<i64>,
    pub value: i64,
    pub iterations: usize,
}

/// Iterates `L <- ceil((2n - L - 2)/3)` from the connected bound until it stops moving.
pub fn fixpoint_iterate(n: usize, max_iterations: usize) -> Option<FixpointTrace> {
    let c = 2 * n as i64 - 2;
    let mut l = lb_connected_raw(n);
    let mut trajectory = vec![l];
    for it in 1..=max_iterations {
        let next = ceil_div(c - l, 3);
        if next == l {
            return Some(FixpointTrace {
                trajectory,
                value: l,
                iterations: it,
            });
        }
        l = next;
        trajectory.push(l);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVariant {
    Simple,
    Connected,
    Kcolored,
}

impl fmt::Display for BoundVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundVariant::Simple => "simple",
            BoundVariant::Connected => "connected",
            BoundVariant::Kcolored => "kcolored",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub variant: BoundVariant,
    pub lb: usize,
    pub ub: Option<usize>,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<10} n={:<4} k={:<3} lb={:<4} ub={}",
            self.variant.to_string(),
            self.n,
            self.k,
            self.lb,
            self.ub.map_or("-".to_string(), |u| u.to_string())
        )
    }
}

/// Simple, connected and k-colored bounds for one board.
///
/// The upper bound is only attached where it is a bound for that variant: a
/// connected placement is also a simple and a k-colored one.
pub fn bound_reports(n: usize, k: usize) -> Result<Vec<BoundReport>> {
    let ub = Some(ub_connected(n).value);
    Ok(vec![
        BoundReport {
            n,
            k: 1,
            variant: BoundVariant::Simple,
            lb: lb_simple(n),
            ub,
        },
        BoundReport {
            n,
            k: 1,
            variant: BoundVariant::Connected,
            lb: lb_connected(n),
            ub,
        },
        BoundReport {
            n,
            k,
            variant: BoundVariant::Kcolored,
            lb: lb_kcolored(n, k)?,
            ub,
        },
    ])
}
