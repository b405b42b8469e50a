//! Board geometry, line indexing and coverage.
//!
//! Squares are 1-based `(x, y)` with `x` the column counted from the left and
//! `y` the row counted from the bottom. Diagonals are indexed by `x - y`
//! (range `-(n-1)..=n-1`) and anti-diagonals by `x + y` (range `2..=2n`).
//! Coverage ignores blocking: an empty square is covered when any of its four
//! lines holds a queen.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoardGeometry {
    n: usize,
}

impl BoardGeometry {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyBoard);
        }
        Ok(BoardGeometry { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn square_count(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn contains(&self, sq: Square) -> bool {
        (1..=self.n).contains(&sq.x) && (1..=self.n).contains(&sq.y)
    }

    pub fn check(&self, sq: Square) -> Result<()> {
        if self.contains(sq) {
            Ok(())
        } else {
            Err(Error::OutOfBoard {
                square: sq,
                n: self.n,
            })
        }
    }

    /// Row-major index, bottom row first.
    #[inline]
    pub fn index_of(&self, sq: Square) -> usize {
        (sq.y - 1) * self.n + (sq.x - 1)
    }

    #[inline]
    pub fn square_at(&self, idx: usize) -> Square {
        Square::new(idx % self.n + 1, idx / self.n + 1)
    }

    pub fn squares(&self) -> impl Iterator<Item = Square> + '_ {
        (0..self.square_count()).map(move |i| self.square_at(i))
    }

    pub fn line_count(&self, kind: LineKind) -> usize {
        match kind {
            LineKind::Row | LineKind::Column => self.n,
            LineKind::Diagonal | LineKind::AntiDiagonal => 2 * self.n - 1,
        }
    }

    /// Every line of the board: rows, columns, diagonals, anti-diagonals.
    pub fn lines(&self) -> impl Iterator<Item = LineId> + '_ {
        let n = self.n as isize;
        let rows = (1..=n).map(LineId::row);
        let cols = (1..=n).map(LineId::column);
        let diags = (-(n - 1)..=n - 1).map(LineId::diagonal);
        let antis = (2..=2 * n).map(LineId::anti_diagonal);
        rows.chain(cols).chain(diags).chain(antis)
    }

    pub fn line_in_range(&self, line: LineId) -> bool {
        let n = self.n as isize;
        let range = match line.kind {
            LineKind::Row | LineKind::Column => 1..=n,
            LineKind::Diagonal => -(n - 1)..=n - 1,
            LineKind::AntiDiagonal => 2..=2 * n,
        };
        range.contains(&line.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Square {
    pub x: usize,
    pub y: usize,
}

impl Square {
    pub const fn new(x: usize, y: usize) -> Self {
        Square { x, y }
    }

    /// True when the two squares share a row, column or diagonal.
    pub fn shares_line(&self, other: Square) -> bool {
        self.x == other.x
            || self.y == other.y
            || self.x + other.y == other.x + self.y
            || self.x + self.y == other.x + other.y
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    Row,
    Column,
    Diagonal,
    AntiDiagonal,
}

impl LineKind {
    pub const ALL: [LineKind; 4] = [
        LineKind::Row,
        LineKind::Column,
        LineKind::Diagonal,
        LineKind::AntiDiagonal,
    ];

    pub fn is_diagonal(self) -> bool {
        matches!(self, LineKind::Diagonal | LineKind::AntiDiagonal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineId {
    pub kind: LineKind,
    pub index: isize,
}

impl LineId {
    pub const fn row(y: isize) -> Self {
        LineId {
            kind: LineKind::Row,
            index: y,
        }
    }
    pub const fn column(x: isize) -> Self {
        LineId {
            kind: LineKind::Column,
            index: x,
        }
    }
    pub const fn diagonal(d: isize) -> Self {
        LineId {
            kind: LineKind::Diagonal,
            index: d,
        }
    }
    pub const fn anti_diagonal(s: isize) -> Self {
        LineId {
            kind: LineKind::AntiDiagonal,
            index: s,
        }
    }

    /// The line of `kind` through `sq`.
    pub fn through(kind: LineKind, sq: Square) -> Self {
        let (x, y) = (sq.x as isize, sq.y as isize);
        match kind {
            LineKind::Row => LineId::row(y),
            LineKind::Column => LineId::column(x),
            LineKind::Diagonal => LineId::diagonal(x - y),
            LineKind::AntiDiagonal => LineId::anti_diagonal(x + y),
        }
    }

    pub fn contains(&self, sq: Square) -> bool {
        LineId::through(self.kind, sq) == *self
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            LineKind::Row => "row",
            LineKind::Column => "column",
            LineKind::Diagonal => "diagonal",
            LineKind::AntiDiagonal => "anti-diagonal",
        };
        write!(f, "{} {}", name, self.index)
    }
}

/// The four lines through `sq`, in the order row, column, diagonal, anti-diagonal.
pub fn lines_through(sq: Square, geometry: BoardGeometry) -> Result<[LineId; 4]> {
    geometry.check(sq)?;
    Ok(LineKind::ALL.map(|kind| LineId::through(kind, sq)))
}

/// Squares of `line`, ordered by increasing x (increasing y for columns).
pub fn line_squares(line: LineId, geometry: BoardGeometry) -> Result<Vec<Square>> {
    if !geometry.line_in_range(line) {
        return Err(Error::LineOutOfRange {
            line,
            n: geometry.n(),
        });
    }
    let n = geometry.n() as isize;
    let i = line.index;
    let out = match line.kind {
        LineKind::Row => (1..=n)
            .map(|x| Square::new(x as usize, i as usize))
            .collect(),
        LineKind::Column => (1..=n)
            .map(|y| Square::new(i as usize, y as usize))
            .collect(),
        LineKind::Diagonal => {
            // y = x - i
            let lo = 1.max(1 + i);
            let hi = n.min(n + i);
            (lo..=hi)
                .map(|x| Square::new(x as usize, (x - i) as usize))
                .collect()
        }
        LineKind::AntiDiagonal => {
            // y = i - x
            let lo = 1.max(i - n);
            let hi = n.min(i - 1);
            (lo..=hi)
                .map(|x| Square::new(x as usize, (i - x) as usize))
                .collect()
        }
    };
    Ok(out)
}

/// The eight symmetries of the square board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Rotate90,
    Rotate180,
    Rotate270,
    FlipHorizontal,
    FlipVertical,
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rotate90,
        Symmetry::Rotate180,
        Symmetry::Rotate270,
        Symmetry::FlipHorizontal,
        Symmetry::FlipVertical,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    pub fn apply(self, sq: Square, n: usize) -> Square {
        let (x, y) = (sq.x, sq.y);
        let (rx, ry) = (n + 1 - x, n + 1 - y);
        let (nx, ny) = match self {
            Symmetry::Identity => (x, y),
            Symmetry::Rotate90 => (ry, x),
            Symmetry::Rotate180 => (rx, ry),
            Symmetry::Rotate270 => (y, rx),
            Symmetry::FlipHorizontal => (rx, y),
            Symmetry::FlipVertical => (x, ry),
            Symmetry::Transpose => (y, x),
            Symmetry::AntiTranspose => (ry, rx),
        };
        Square::new(nx, ny)
    }
}

/// Row-major indices of the squares that have the smallest index in their
/// symmetry orbit. Every non-empty placement has an image whose lowest-index
/// queen lies in this set.
pub fn orbit_minima(geometry: BoardGeometry) -> Vec<usize> {
    let n = geometry.n();
    geometry
        .squares()
        .filter(|&sq| {
            let idx = geometry.index_of(sq);
            Symmetry::ALL
                .iter()
                .all(|s| geometry.index_of(s.apply(sq, n)) >= idx)
        })
        .map(|sq| geometry.index_of(sq))
        .collect()
}

/// A board size plus a set of occupied squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    geometry: BoardGeometry,
    occupied: Vec<u64>,
    n_q: usize,
}

impl Placement {
    pub fn empty(geometry: BoardGeometry) -> Self {
        let words = geometry.square_count().div_ceil(64);
        Placement {
            geometry,
            occupied: vec![0; words],
            n_q: 0,
        }
    }

    /// Builds a placement, rejecting off-board and repeated squares.
    pub fn from_squares<I>(geometry: BoardGeometry, squares: I) -> Result<Self>
    where
        I: IntoIterator<Item = Square>,
    {
        let mut p = Placement::empty(geometry);
        for sq in squares {
            if !p.insert(sq)? {
                return Err(Error::DuplicateSquare(sq));
            }
        }
        Ok(p)
    }

    /// Shorthand for tests and examples: `Placement::of(5, &[(1, 1), (3, 3)])`.
    pub fn of(n: usize, squares: &[(usize, usize)]) -> Result<Self> {
        let geometry = BoardGeometry::new(n)?;
        Placement::from_squares(geometry, squares.iter().map(|&(x, y)| Square::new(x, y)))
    }

    pub fn from_indices<I>(geometry: BoardGeometry, indices: I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let mut p = Placement::empty(geometry);
        for i in indices {
            assert!(i < geometry.square_count(), "square index {i} out of range");
            p.set_index(i);
        }
        p
    }

    #[inline]
    fn set_index(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.occupied[w] & (1 << b) == 0;
        if fresh {
            self.occupied[w] |= 1 << b;
            self.n_q += 1;
        }
        fresh
    }

    /// Adds a queen; returns false if the square was already occupied.
    pub fn insert(&mut self, sq: Square) -> Result<bool> {
        self.geometry.check(sq)?;
        Ok(self.set_index(self.geometry.index_of(sq)))
    }

    pub fn remove(&mut self, sq: Square) -> bool {
        if !self.contains(sq) {
            return false;
        }
        let i = self.geometry.index_of(sq);
        self.occupied[i / 64] &= !(1 << (i % 64));
        self.n_q -= 1;
        true
    }

    #[inline]
    pub fn contains(&self, sq: Square) -> bool {
        self.geometry.contains(sq) && self.contains_index(self.geometry.index_of(sq))
    }

    #[inline]
    pub fn contains_index(&self, i: usize) -> bool {
        self.occupied[i / 64] & (1 << (i % 64)) != 0
    }

    #[inline]
    pub fn geometry(&self) -> BoardGeometry {
        self.geometry
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.geometry.n()
    }

    #[inline]
    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn is_empty(&self) -> bool {
        self.n_q == 0
    }

    /// Row-major indices of the queens, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.occupied.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Queens in row-major order.
    pub fn queens(&self) -> Vec<Square> {
        self.indices().map(|i| self.geometry.square_at(i)).collect()
    }

    pub fn transformed(&self, sym: Symmetry) -> Placement {
        let n = self.n();
        let g = self.geometry;
        Placement::from_indices(
            g,
            self.queens()
                .into_iter()
                .map(|q| g.index_of(sym.apply(q, n))),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareStatus {
    Occupied,
    Covered,
    Uncovered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageMap {
    geometry: BoardGeometry,
    statuses: Vec<SquareStatus>,
    pub occupied: usize,
    pub covered: usize,
    pub uncovered: usize,
}

impl CoverageMap {
    pub fn status(&self, sq: Square) -> SquareStatus {
        self.statuses[self.geometry.index_of(sq)]
    }

    pub fn uncovered_squares(&self) -> Vec<Square> {
        self.statuses
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == SquareStatus::Uncovered)
            .map(|(i, _)| self.geometry.square_at(i))
            .collect()
    }

    pub fn geometry(&self) -> BoardGeometry {
        self.geometry
    }
}

/// Queen counts per line, indexed densely by kind.
pub(crate) struct LineOccupancy {
    n: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    diags: Vec<usize>,
    antis: Vec<usize>,
}

impl LineOccupancy {
    pub(crate) fn of(placement: &Placement) -> Self {
        let n = placement.n();
        let mut occ = LineOccupancy {
            n,
            rows: vec![0; n],
            cols: vec![0; n],
            diags: vec![0; 2 * n - 1],
            antis: vec![0; 2 * n - 1],
        };
        for q in placement.queens() {
            occ.rows[q.y - 1] += 1;
            occ.cols[q.x - 1] += 1;
            occ.diags[q.x + n - 1 - q.y] += 1;
            occ.antis[q.x + q.y - 2] += 1;
        }
        occ
    }

    pub(crate) fn count(&self, line: LineId) -> usize {
        let i = line.index;
        let n = self.n as isize;
        match line.kind {
            LineKind::Row => self.rows[(i - 1) as usize],
            LineKind::Column => self.cols[(i - 1) as usize],
            LineKind::Diagonal => self.diags[(i + n - 1) as usize],
            LineKind::AntiDiagonal => self.antis[(i - 2) as usize],
        }
    }

    #[inline]
    pub(crate) fn sees(&self, sq: Square) -> bool {
        let n = self.n;
        self.rows[sq.y - 1] > 0
            || self.cols[sq.x - 1] > 0
            || self.diags[sq.x + n - 1 - sq.y] > 0
            || self.antis[sq.x + sq.y - 2] > 0
    }
}

pub fn coverage(placement: &Placement) -> CoverageMap {
    let g = placement.geometry();
    let occ = LineOccupancy::of(placement);
    let mut map = CoverageMap {
        geometry: g,
        statuses: Vec::with_capacity(g.square_count()),
        occupied: 0,
        covered: 0,
        uncovered: 0,
    };
    for (i, sq) in g.squares().enumerate() {
        let status = if placement.contains_index(i) {
            map.occupied += 1;
            SquareStatus::Occupied
        } else if occ.sees(sq) {
            map.covered += 1;
            SquareStatus::Covered
        } else {
            map.uncovered += 1;
            SquareStatus::Uncovered
        };
        map.statuses.push(status);
    }
    map
}

/// True iff every square is occupied or covered. An empty placement never dominates.
pub fn dominates(placement: &Placement) -> bool {
    if placement.is_empty() {
        return false;
    }
    let occ = LineOccupancy::of(placement);
    placement.geometry().squares().all(|sq| occ.sees(sq))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineStatus {
    /// No queen on the line.
    pub empty: bool,
    /// Some square of the line is uncovered.
    pub uncovered: bool,
}

pub fn line_status(line: LineId, placement: &Placement) -> Result<LineStatus> {
    let squares = line_squares(line, placement.geometry())?;
    let map = coverage(placement);
    Ok(LineStatus {
        empty: squares.iter().all(|&sq| !placement.contains(sq)),
        uncovered: squares
            .iter()
            .any(|&sq| map.status(sq) == SquareStatus::Uncovered),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> BoardGeometry {
        BoardGeometry::new(n).unwrap()
    }

    #[test]
    fn lines_through_examples() {
        assert_eq!(
            lines_through(Square::new(3, 3), g(5)).unwrap(),
            [
                LineId::row(3),
                LineId::column(3),
                LineId::diagonal(0),
                LineId::anti_diagonal(6)
            ]
        );
        assert_eq!(
            lines_through(Square::new(1, 1), g(5)).unwrap(),
            [
                LineId::row(1),
                LineId::column(1),
                LineId::diagonal(0),
                LineId::anti_diagonal(2)
            ]
        );
        assert_eq!(
            lines_through(Square::new(2, 5), g(8)).unwrap(),
            [
                LineId::row(5),
                LineId::column(2),
                LineId::diagonal(-3),
                LineId::anti_diagonal(7)
            ]
        );
        assert!(matches!(
            lines_through(Square::new(6, 1), g(5)),
            Err(Error::OutOfBoard { .. })
        ));
        assert!(lines_through(Square::new(0, 1), g(5)).is_err());
    }

    #[test]
    fn line_squares_examples() {
        let sq = |x, y| Square::new(x, y);
        assert_eq!(
            line_squares(LineId::diagonal(0), g(3)).unwrap(),
            vec![sq(1, 1), sq(2, 2), sq(3, 3)]
        );
        assert_eq!(
            line_squares(LineId::anti_diagonal(2), g(3)).unwrap(),
            vec![sq(1, 1)]
        );
        assert_eq!(
            line_squares(LineId::row(2), g(4)).unwrap(),
            vec![sq(1, 2), sq(2, 2), sq(3, 2), sq(4, 2)]
        );
        assert_eq!(
            line_squares(LineId::column(2), g(3)).unwrap(),
            vec![sq(2, 1), sq(2, 2), sq(2, 3)]
        );
        assert_eq!(
            line_squares(LineId::diagonal(-2), g(3)).unwrap(),
            vec![sq(1, 3)]
        );
        assert!(line_squares(LineId::anti_diagonal(1), g(3)).is_err());
        assert!(line_squares(LineId::diagonal(3), g(3)).is_err());
        assert!(line_squares(LineId::row(0), g(3)).is_err());
    }

    #[test]
    fn every_square_on_one_line_of_each_kind() {
        let geom = g(6);
        let lines: Vec<_> = geom.lines().collect();
        assert_eq!(lines.len(), 6 * 6 - 2);
        for sq in geom.squares() {
            for kind in LineKind::ALL {
                let hits = lines
                    .iter()
                    .filter(|l| l.kind == kind && line_squares(**l, geom).unwrap().contains(&sq))
                    .count();
                assert_eq!(hits, 1, "{sq} on {hits} lines of {kind:?}");
            }
        }
    }

    #[test]
    fn coverage_examples() {
        let m = coverage(&Placement::of(3, &[(2, 2)]).unwrap());
        assert_eq!((m.uncovered, m.covered, m.occupied), (0, 8, 1));

        let m = coverage(&Placement::of(2, &[(1, 1)]).unwrap());
        assert_eq!(m.uncovered, 0);

        let m = coverage(&Placement::of(4, &[(1, 1)]).unwrap());
        let unc = m.uncovered_squares();
        assert!(unc.contains(&Square::new(2, 4)));
        assert!(unc.contains(&Square::new(3, 2)));
        // by hand: lines of (1,1) reach 10 squares of the 4x4
        assert_eq!(unc.len(), 16 - 10);
    }

    #[test]
    fn dominates_examples() {
        assert!(dominates(&Placement::of(3, &[(2, 2)]).unwrap()));
        assert!(!dominates(&Placement::of(4, &[(1, 1)]).unwrap()));
        assert!(dominates(&Placement::of(1, &[(1, 1)]).unwrap()));
        assert!(!dominates(&Placement::empty(g(1))));
        assert!(!dominates(&Placement::empty(g(3))));
    }

    #[test]
    fn line_status_examples() {
        let p = Placement::of(3, &[(2, 2)]).unwrap();
        assert_eq!(
            line_status(LineId::row(1), &p).unwrap(),
            LineStatus {
                empty: true,
                uncovered: false
            }
        );
        assert_eq!(
            line_status(LineId::row(2), &p).unwrap(),
            LineStatus {
                empty: false,
                uncovered: false
            }
        );
        let p = Placement::of(4, &[(1, 1)]).unwrap();
        assert_eq!(
            line_status(LineId::column(3), &p).unwrap(),
            LineStatus {
                empty: true,
                uncovered: true
            }
        );
    }

    #[test]
    fn placement_rejects_bad_squares() {
        assert!(matches!(
            Placement::of(3, &[(1, 1), (1, 1)]),
            Err(Error::DuplicateSquare(_))
        ));
        assert!(matches!(
            Placement::of(3, &[(4, 1)]),
            Err(Error::OutOfBoard { .. })
        ));
        assert!(matches!(BoardGeometry::new(0), Err(Error::EmptyBoard)));
    }

    #[test]
    fn placement_bookkeeping() {
        let mut p = Placement::of(9, &[(9, 9), (1, 1), (5, 4)]).unwrap();
        assert_eq!(p.n_q(), 3);
        assert_eq!(
            p.queens(),
            vec![Square::new(1, 1), Square::new(5, 4), Square::new(9, 9)]
        );
        assert!(p.remove(Square::new(5, 4)));
        assert!(!p.remove(Square::new(5, 4)));
        assert_eq!(p.n_q(), 2);
        assert!(!p.insert(Square::new(9, 9)).unwrap());
    }

    #[test]
    fn symmetries_form_a_group_on_squares() {
        let n = 5;
        for sym in Symmetry::ALL {
            let mut seen = std::collections::HashSet::new();
            for sq in g(n).squares() {
                let t = sym.apply(sq, n);
                assert!(g(n).contains(t));
                seen.insert(t);
            }
            assert_eq!(seen.len(), n * n);
        }
        let sq = Square::new(2, 1);
        let r = |s| Symmetry::Rotate90.apply(s, n);
        assert_eq!(r(r(r(r(sq)))), sq);
        assert_eq!(r(r(sq)), Symmetry::Rotate180.apply(sq, n));
        assert_eq!(r(r(r(sq))), Symmetry::Rotate270.apply(sq, n));
    }

    #[test]
    fn orbit_minima_cover_every_orbit_once() {
        for n in 1..=9 {
            let geom = g(n);
            let minima = orbit_minima(geom);
            let mut orbits = std::collections::BTreeSet::new();
            for sq in geom.squares() {
                let orbit: std::collections::BTreeSet<usize> = Symmetry::ALL
                    .iter()
                    .map(|s| geom.index_of(s.apply(sq, n)))
                    .collect();
                orbits.insert(orbit);
            }
            assert_eq!(minima.len(), orbits.len(), "n={n}");
            for orbit in &orbits {
                assert!(minima.contains(orbit.iter().next().unwrap()));
            }
        }
    }
}
