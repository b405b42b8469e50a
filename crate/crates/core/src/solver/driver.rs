//! Iterative deepening over sizes, split by lowest-index queen.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use super::{SolveRequest, SolveResult};
use crate::board::{orbit_minima, BoardGeometry, Placement};
use crate::error::{Error, Result};

/// State shared by the workers of one size.
pub(super) struct Shared {
    nodes: AtomicU64,
    node_limit: Option<u64>,
    limit_hit: AtomicBool,
    /// Smallest first-queen index that produced a witness at this size.
    best_first: AtomicUsize,
}

impl Shared {
    fn new(node_limit: Option<u64>) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            node_limit,
            limit_hit: AtomicBool::new(false),
            best_first: AtomicUsize::new(usize::MAX),
        }
    }
}

/// Per-worker view: batches node counts and polls for cancellation.
pub(super) struct Worker<'a> {
    shared: &'a Shared,
    first: usize,
    pending: u64,
    stopped: bool,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl<'a> Worker<'a> {
    fn new(shared: &'a Shared, first: usize) -> Self {
        let mut w = Worker {
            shared,
            first,
            pending: 0,
            stopped: false,
        };
        w.flush();
        w
    }

    /// Counts one node; returns false once the worker should give up.
    #[inline]
    pub(super) fn tick(&mut self) -> bool {
        if self.stopped {
            return false;
        }
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.flush();
        }
        !self.stopped
    }

    fn flush(&mut self) {
        let total = self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if let Some(limit) = self.shared.node_limit {
            if total >= limit {
                self.shared.limit_hit.store(true, Ordering::Relaxed);
            }
        }
        if self.shared.limit_hit.load(Ordering::Relaxed)
            || self.shared.best_first.load(Ordering::Relaxed) < self.first
        {
            self.stopped = true;
        }
    }
}

impl Drop for Worker<'_> {
    fn drop(&mut self) {
        self.flush();
    }
}

/// Searches for a feasible set of exactly `size` queens whose lowest index is `first`.
pub(super) trait SizeSearch: Sync {
    fn search(&self, size: usize, first: usize, worker: &mut Worker<'_>) -> Option<Vec<usize>>;
}

pub(super) fn deepen<S: SizeSearch>(
    req: &SolveRequest,
    start: usize,
    search: &S,
) -> Result<SolveResult> {
    let t0 = Instant::now();
    let geometry = BoardGeometry::new(req.n)?;
    let squares = geometry.square_count();
    let firsts = orbit_minima(geometry);
    let cap = req.max_size.map_or(squares, |m| m.min(squares));
    let start = start.max(1);

    let mut nodes = 0u64;
    let mut result = SolveResult {
        n: req.n,
        variant: req.variant,
        method: req.method,
        value: None,
        witness: None,
        lower_bound: start,
        nodes_explored: 0,
        elapsed: t0.elapsed(),
        proven_optimal: false,
    };

    let pool = Pool::new(req.workers);
    for size in start..=cap {
        let remaining = req.node_limit.map(|l| l.saturating_sub(nodes));
        let shared = Shared::new(remaining);
        let found = pool.first_hit(&firsts, |first| {
            let mut worker = Worker::new(&shared, first);
            let hit = search.search(size, first, &mut worker);
            if hit.is_some() {
                shared.best_first.fetch_min(first, Ordering::Relaxed);
            }
            hit
        });
        nodes += shared.nodes.load(Ordering::Relaxed);
        result.nodes_explored = nodes;
        if let Some(indices) = found {
            let witness = Placement::from_indices(geometry, indices);
            debug_assert_eq!(witness.n_q(), size);
            result.value = Some(size);
            result.witness = Some(witness);
            result.proven_optimal = true;
            break;
        }
        if shared.limit_hit.load(Ordering::Relaxed) {
            break;
        }
        result.lower_bound = size + 1;
    }
    result.elapsed = t0.elapsed();

    if result.value.is_none() && result.lower_bound > squares {
        return Err(Error::Infeasible {
            n: req.n,
            variant: req.variant.to_string(),
        });
    }
    Ok(result)
}

/// Runs the per-first-queen searches, returning the hit with the smallest first index.
struct Pool {
    #[cfg(feature = "parallel")]
    inner: Option<rayon::ThreadPool>,
}

impl Pool {
    #[cfg(feature = "parallel")]
    fn new(workers: usize) -> Self {
        let inner = (workers > 1).then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("failed to build worker pool")
        });
        Pool { inner }
    }

    #[cfg(not(feature = "parallel"))]
    fn new(_workers: usize) -> Self {
        Pool {}
    }

    fn first_hit<F>(&self, firsts: &[usize], run: F) -> Option<Vec<usize>>
    where
        F: Fn(usize) -> Option<Vec<usize>> + Sync,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.inner {
            use rayon::prelude::*;
            return pool.install(|| {
                firsts
                    .par_iter()
                    .filter_map(|&f| run(f).map(|w| (f, w)))
                    .min_by_key(|(f, _)| *f)
                    .map(|(_, w)| w)
            });
        }
        firsts.iter().find_map(|&f| run(f))
    }
}
