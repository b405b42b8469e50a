//! Bitboard branch-and-bound.
//!
//! Squares are decided in row-major order (include, then exclude). A node is
//! cut when
//! * some uncovered square has no attacker left among the undecided squares,
//! * the uncovered squares contain more pairwise line-disjoint squares than
//!   the remaining queens can reach (each queen meets at most four of them,
//!   one per line through it).
//!
//! Connectivity is not hereditary, so the graph conditions are only checked on
//! complete sets.

use super::driver::{deepen, SizeSearch, Worker};
use super::{SolveRequest, SolveResult, Variant};
use crate::board::{BoardGeometry, Square};
use crate::error::Result;

/// Largest side whose squares fit in a `u128`.
pub const MAX_BITBOARD_SIDE: usize = 11;

type Mask = u128;

#[inline]
fn bit(i: usize) -> Mask {
    1 << i
}

pub(super) struct Bitboard {
    squares: usize,
    full: Mask,
    /// Squares sharing a line with `i`, `i` included.
    attack: Vec<Mask>,
    /// `dead[i]`: squares none of whose attackers has index `>= i`.
    dead: Vec<Mask>,
    /// Lines with at least two squares, squares in line order.
    lines: Vec<Vec<u8>>,
}

impl Bitboard {
    pub(super) fn new(geometry: BoardGeometry) -> Self {
        let n = geometry.n();
        assert!(
            n <= MAX_BITBOARD_SIDE,
            "bitboard supports n <= {MAX_BITBOARD_SIDE}"
        );
        let squares = n * n;
        let sq = |i| geometry.square_at(i);
        let attack: Vec<Mask> = (0..squares)
            .map(|i| {
                (0..squares)
                    .filter(|&j| sq(i).shares_line(sq(j)))
                    .fold(0, |m, j| m | bit(j))
            })
            .collect();
        let max_attacker: Vec<usize> = attack
            .iter()
            .map(|&m| 127 - m.leading_zeros() as usize)
            .collect();
        let dead = (0..=squares)
            .map(|i| {
                (0..squares)
                    .filter(|&u| max_attacker[u] < i)
                    .fold(0, |m, u| m | bit(u))
            })
            .collect();

        let mut lines = Vec::new();
        let ni = n as isize;
        for y in 1..=n {
            lines.push((1..=n).map(|x| Square::new(x, y)).collect::<Vec<_>>());
        }
        for x in 1..=n {
            lines.push((1..=n).map(|y| Square::new(x, y)).collect());
        }
        for d in -(ni - 1)..=ni - 1 {
            lines.push(
                (1..=ni)
                    .filter(|x| (1..=ni).contains(&(x - d)))
                    .map(|x| Square::new(x as usize, (x - d) as usize))
                    .collect(),
            );
        }
        for s in 2..=2 * ni {
            lines.push(
                (1..=ni)
                    .filter(|x| (1..=ni).contains(&(s - x)))
                    .map(|x| Square::new(x as usize, (s - x) as usize))
                    .collect(),
            );
        }
        let lines = lines
            .into_iter()
            .filter(|l| l.len() >= 2)
            .map(|l| l.into_iter().map(|s| geometry.index_of(s) as u8).collect())
            .collect();

        Bitboard {
            squares,
            full: if squares == 128 { !0 } else { bit(squares) - 1 },
            attack,
            dead,
            lines,
        }
    }

    /// Greedy count of pairwise line-disjoint squares in `unc`, stopping past `cap`.
    #[inline]
    fn independent(&self, mut unc: Mask, cap: usize) -> usize {
        let mut count = 0;
        while unc != 0 && count <= cap {
            let i = unc.trailing_zeros() as usize;
            unc &= !self.attack[i];
            count += 1;
        }
        count
    }

    /// Component count and "every queen sees another" for the queens in `queens`.
    fn graph_shape(&self, queens: Mask) -> (usize, bool) {
        let mut parent = [0u8; 128];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(parent: &mut [u8; 128], mut i: u8) -> u8 {
            while parent[i as usize] != i {
                parent[i as usize] = parent[parent[i as usize] as usize];
                i = parent[i as usize];
            }
            i
        }
        let mut components = queens.count_ones() as usize;
        let mut seen: Mask = 0;
        for line in &self.lines {
            let mut prev: Option<u8> = None;
            for &s in line {
                if queens & bit(s as usize) == 0 {
                    continue;
                }
                if let Some(p) = prev {
                    seen |= bit(p as usize) | bit(s as usize);
                    let (a, b) = (find(&mut parent, p), find(&mut parent, s));
                    if a != b {
                        parent[a as usize] = b;
                        components -= 1;
                    }
                }
                prev = Some(s);
            }
        }
        (components, seen == queens)
    }

    fn accepts(&self, variant: Variant, queens: Mask) -> bool {
        match variant {
            Variant::Simple => true,
            Variant::Connected => self.graph_shape(queens).0 == 1,
            Variant::Total => self.graph_shape(queens).1,
            Variant::Kcolored(k) => self.graph_shape(queens).0 <= k,
        }
    }
}

struct Search {
    board: Bitboard,
    variant: Variant,
}

struct Dfs<'s, 'w, 'a> {
    search: &'s Search,
    worker: &'w mut Worker<'a>,
    witness: Mask,
}

impl Dfs<'_, '_, '_> {
    fn run(&mut self, i: usize, left: usize, covered: Mask, queens: Mask) -> bool {
        if !self.worker.tick() {
            return false;
        }
        let b = &self.search.board;
        if left == 0 {
            if covered == b.full && b.accepts(self.search.variant, queens) {
                self.witness = queens;
                return true;
            }
            return false;
        }
        if b.squares - i < left {
            return false;
        }
        let unc = b.full & !covered;
        if unc & b.dead[i] != 0 {
            return false;
        }
        if unc != 0 && b.independent(unc, 4 * left) > 4 * left {
            return false;
        }
        self.run(i + 1, left - 1, covered | b.attack[i], queens | bit(i))
            || self.run(i + 1, left, covered, queens)
    }
}

impl SizeSearch for Search {
    fn search(&self, size: usize, first: usize, worker: &mut Worker<'_>) -> Option<Vec<usize>> {
        let b = &self.board;
        let mut dfs = Dfs {
            search: self,
            worker,
            witness: 0,
        };
        if !dfs.run(first + 1, size - 1, b.attack[first], bit(first)) {
            return None;
        }
        let w = dfs.witness;
        Some((0..b.squares).filter(|&i| w & bit(i) != 0).collect())
    }
}

pub(super) fn solve(req: &SolveRequest) -> Result<SolveResult> {
    let search = Search {
        board: Bitboard::new(BoardGeometry::new(req.n)?),
        variant: req.variant,
    };
    deepen(req, req.variant.lower_bound(req.n), &search)
}
