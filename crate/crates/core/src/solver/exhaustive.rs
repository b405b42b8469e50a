//! Plain subset enumeration, checked with the placement-level predicates.

use super::driver::{deepen, SizeSearch, Worker};
use super::{feasible, SolveRequest, SolveResult, Variant};
use crate::board::{BoardGeometry, Placement};
use crate::error::Result;

struct Enumerate {
    geometry: BoardGeometry,
    variant: Variant,
}

impl SizeSearch for Enumerate {
    fn search(&self, size: usize, first: usize, worker: &mut Worker<'_>) -> Option<Vec<usize>> {
        let squares = self.geometry.square_count();
        let rest = size - 1;
        // the remaining queens are drawn from first+1..squares
        let pool = squares - first - 1;
        if rest > pool {
            return None;
        }
        let mut combo: Vec<usize> = (0..rest).map(|i| first + 1 + i).collect();
        loop {
            if !worker.tick() {
                return None;
            }
            let chosen = std::iter::once(first).chain(combo.iter().copied());
            let placement = Placement::from_indices(self.geometry, chosen);
            if feasible(&placement, self.variant) {
                let mut out = vec![first];
                out.extend_from_slice(&combo);
                return Some(out);
            }
            if !next_combination(&mut combo, squares) {
                return None;
            }
        }
    }
}

/// Advances `combo` (strictly increasing, values below `upper`) to the next
/// combination in lexicographic order.
fn next_combination(combo: &mut [usize], upper: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < upper - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(super) fn solve(req: &SolveRequest) -> Result<SolveResult> {
    let search = Enumerate {
        geometry: BoardGeometry::new(req.n)?,
        variant: req.variant,
    };
    deepen(req, 1, &search)
}
