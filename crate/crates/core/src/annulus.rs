//! Sentinel/annulus decomposition and the counting inequalities.
//!
//! The extreme empty columns `x1 + 1`, `n - x2` and extreme empty rows
//! `y1 + 1`, `n - y2` cut the board into a 3x3 grid of bands:
//!
//! ```text
//!          left    middle   right
//! top      Q1      Q5       Q2
//! middle   Q8      A / Q9   Q6
//! bottom   Q4      Q7       Q3
//! ```
//!
//! The middle block's border is the annulus `A` (always empty, since it lies
//! on empty lines); its inside is `Q9`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{
    line_squares, lines_through, LineId, LineKind, LineOccupancy, Placement, Square,
};
use crate::error::{Degeneracy, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentinels {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
}

impl Sentinels {
    pub fn first_empty_column(&self) -> usize {
        self.x1 + 1
    }
    pub fn last_empty_column(&self, n: usize) -> usize {
        n - self.x2
    }
    pub fn first_empty_row(&self) -> usize {
        self.y1 + 1
    }
    pub fn last_empty_row(&self, n: usize) -> usize {
        n - self.y2
    }
    pub fn sum(&self) -> usize {
        self.x1 + self.x2 + self.y1 + self.y2
    }
}

pub fn sentinels(placement: &Placement) -> Result<Sentinels> {
    let n = placement.n();
    let occ = LineOccupancy::of(placement);
    let empty_cols: Vec<usize> = (1..=n)
        .filter(|&x| occ.count(LineId::column(x as isize)) == 0)
        .collect();
    let empty_rows: Vec<usize> = (1..=n)
        .filter(|&y| occ.count(LineId::row(y as isize)) == 0)
        .collect();
    let (Some(&c_lo), Some(&c_hi)) = (empty_cols.first(), empty_cols.last()) else {
        return Err(Error::Degenerate(Degeneracy::NoEmptyColumn));
    };
    let (Some(&r_lo), Some(&r_hi)) = (empty_rows.first(), empty_rows.last()) else {
        return Err(Error::Degenerate(Degeneracy::NoEmptyRow));
    };
    Ok(Sentinels {
        x1: c_lo - 1,
        x2: n - c_hi,
        y1: r_lo - 1,
        y2: n - r_hi,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    Q7,
    Q8,
    Q9,
    Annulus,
}

impl Region {
    /// Zero-based slot in `queen_counts`, `None` for the annulus.
    pub fn slot(self) -> Option<usize> {
        match self {
            Region::Annulus => None,
            r => Some(r as usize),
        }
    }

    pub fn is_corner(self) -> bool {
        matches!(self, Region::Q1 | Region::Q2 | Region::Q3 | Region::Q4)
    }

    pub fn is_strip(self) -> bool {
        matches!(self, Region::Q5 | Region::Q6 | Region::Q7 | Region::Q8)
    }

    /// Most annulus squares a single queen in this region can cover.
    pub fn annulus_cap(self) -> usize {
        match self {
            r if r.is_corner() => 2,
            r if r.is_strip() => 6,
            Region::Q9 => 8,
            _ => 0,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slot() {
            Some(i) => write!(f, "Q{}", i + 1),
            None => write!(f, "A"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Band {
    Low,
    Mid,
    High,
}

#[derive(Debug, Clone)]
pub struct RegionMap {
    placement: Placement,
    pub sentinels: Sentinels,
    labels: Vec<Region>,
    /// Queen counts for Q1..Q9.
    pub queen_counts: [usize; 9],
    pub annulus_squares: Vec<Square>,
    /// `4n - 4 - 2(x1 + x2 + y1 + y2)`.
    pub annulus_size: usize,
}

impl RegionMap {
    pub fn region_of(&self, sq: Square) -> Region {
        self.labels[self.placement.geometry().index_of(sq)]
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn n(&self) -> usize {
        self.placement.n()
    }

    pub fn q(&self, i: usize) -> usize {
        self.queen_counts[i - 1]
    }

    pub fn corner_queens(&self) -> usize {
        self.queen_counts[..4].iter().sum()
    }

    pub fn strip_queens(&self) -> usize {
        self.queen_counts[4..8].iter().sum()
    }

    pub fn in_annulus(&self, sq: Square) -> bool {
        self.region_of(sq) == Region::Annulus
    }

    /// Distinct annulus squares on the four lines through `sq`.
    pub fn annulus_hits(&self, sq: Square) -> usize {
        let g = self.placement.geometry();
        g.squares()
            .filter(|&a| self.in_annulus(a) && a.shares_line(sq) && a != sq)
            .count()
    }
}

/// Splits the board into Q1..Q9 and the annulus.
///
/// Requires at least two distinct empty columns and two distinct empty rows;
/// with a single extreme column (or row) the frame has no inside.
pub fn decompose(placement: &Placement) -> Result<RegionMap> {
    let s = sentinels(placement)?;
    let n = placement.n();
    let (c_lo, c_hi) = (s.first_empty_column(), s.last_empty_column(n));
    let (r_lo, r_hi) = (s.first_empty_row(), s.last_empty_row(n));
    if c_lo == c_hi || r_lo == r_hi {
        return Err(Error::Degenerate(Degeneracy::CollapsedFrame));
    }

    let band = |v: usize, lo: usize, hi: usize| {
        if v < lo {
            Band::Low
        } else if v > hi {
            Band::High
        } else {
            Band::Mid
        }
    };
    let g = placement.geometry();
    let mut labels = Vec::with_capacity(g.square_count());
    let mut annulus_squares = Vec::new();
    let mut queen_counts = [0usize; 9];
    for sq in g.squares() {
        let region = match (band(sq.x, c_lo, c_hi), band(sq.y, r_lo, r_hi)) {
            (Band::Low, Band::High) => Region::Q1,
            (Band::High, Band::High) => Region::Q2,
            (Band::High, Band::Low) => Region::Q3,
            (Band::Low, Band::Low) => Region::Q4,
            (Band::Mid, Band::High) => Region::Q5,
            (Band::High, Band::Mid) => Region::Q6,
            (Band::Mid, Band::Low) => Region::Q7,
            (Band::Low, Band::Mid) => Region::Q8,
            (Band::Mid, Band::Mid) => {
                if sq.x == c_lo || sq.x == c_hi || sq.y == r_lo || sq.y == r_hi {
                    Region::Annulus
                } else {
                    Region::Q9
                }
            }
        };
        if region == Region::Annulus {
            annulus_squares.push(sq);
        }
        if placement.contains(sq) {
            let slot = region.slot().expect("annulus squares lie on empty lines");
            queen_counts[slot] += 1;
        }
        labels.push(region);
    }
    Ok(RegionMap {
        placement: placement.clone(),
        sentinels: s,
        labels,
        queen_counts,
        annulus_squares,
        annulus_size: 4 * n - 4 - 2 * s.sum(),
    })
}

/// True iff the line meets at least one annulus square.
pub fn line_crosses_annulus(line: LineId, map: &RegionMap) -> bool {
    line_squares(line, map.placement.geometry())
        .map(|sqs| sqs.into_iter().any(|sq| map.in_annulus(sq)))
        .unwrap_or(false)
}

/// Line-sharing counts (`p - 1` per line holding `p` queens) split by line
/// kind and by whether the line meets the annulus.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonalityTally {
    pub common_r_i: usize,
    pub common_c_i: usize,
    pub common_d_on_annulus: usize,
    pub common_d_off_annulus: usize,
    pub common_r_ii: usize,
    pub common_c_ii: usize,
}

impl CommonalityTally {
    pub fn total(&self) -> usize {
        self.common_r_i
            + self.common_c_i
            + self.common_d_on_annulus
            + self.common_d_off_annulus
            + self.common_r_ii
            + self.common_c_ii
    }

    /// The terms discounted from the annulus inequality.
    pub fn annulus_terms(&self) -> usize {
        self.common_r_i + self.common_c_i + self.common_d_on_annulus + self.common_d_off_annulus
    }

    /// The terms discounted from the band inequality.
    pub fn band_terms(&self) -> usize {
        self.common_r_ii + self.common_c_ii
    }
}

pub fn tally_commonality(placement: &Placement, map: &RegionMap) -> CommonalityTally {
    let occ = LineOccupancy::of(placement);
    let mut t = CommonalityTally::default();
    for line in placement.geometry().lines() {
        let p = occ.count(line);
        if p < 2 {
            continue;
        }
        let shared = p - 1;
        let bucket = match (line.kind, line_crosses_annulus(line, map)) {
            (LineKind::Row, true) => &mut t.common_r_i,
            (LineKind::Row, false) => &mut t.common_r_ii,
            (LineKind::Column, true) => &mut t.common_c_i,
            (LineKind::Column, false) => &mut t.common_c_ii,
            (_, true) => &mut t.common_d_on_annulus,
            (_, false) => &mut t.common_d_off_annulus,
        };
        *bucket += shared;
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Inequality {
    I,
    II,
    III,
    IV,
    V,
}

impl Inequality {
    pub const ALL: [Inequality; 5] = [
        Inequality::I,
        Inequality::II,
        Inequality::III,
        Inequality::IV,
        Inequality::V,
    ];
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub which: Inequality,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// Signed contributions summing to `lhs`.
    pub breakdown: Vec<Term>,
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .breakdown
            .iter()
            .map(|t| format!("{}={}", t.name, t.value))
            .collect();
        write!(
            f,
            "({:>3}) lhs={:<4} rhs={:<4} {}  [{}]",
            self.which.to_string(),
            self.lhs,
            self.rhs,
            if self.holds { "holds" } else { "VIOLATED" },
            terms.join(", ")
        )
    }
}

pub fn check_inequality(which: Inequality, placement: &Placement) -> Result<InequalityReport> {
    let map = decompose(placement)?;
    let tally = tally_commonality(placement, &map);
    Ok(evaluate(which, &map, &tally))
}

/// Evaluates one inequality against an existing decomposition and tally.
pub fn evaluate(which: Inequality, map: &RegionMap, tally: &CommonalityTally) -> InequalityReport {
    let n = map.n() as i64;
    let s = map.sentinels;
    let q9 = map.q(9) as i64;
    let strips = map.strip_queens() as i64;
    let corners = map.corner_queens() as i64;
    let sent = s.sum() as i64;
    let term = |name: &str, value: i64| Term {
        name: name.to_string(),
        value,
    };

    let annulus_lhs = vec![
        term("8*Q9", 8 * q9),
        term("6*(Q5..Q8)", 6 * strips),
        term("4*(Q1..Q4)", 4 * corners),
    ];
    let annulus_rhs = 2 * (2 * n - 2 - sent);
    let band_lhs = vec![
        term("2*(Q5..Q8)", 2 * strips),
        term("4*(Q1..Q4)", 4 * corners),
    ];
    let band_rhs = 2 * sent;

    let (breakdown, rhs) = match which {
        Inequality::I => (annulus_lhs, annulus_rhs),
        Inequality::II => (band_lhs, band_rhs),
        Inequality::III => (
            vec![term(
                "sum Q1..Q9",
                map.queen_counts.iter().sum::<usize>() as i64,
            )],
            n / 2,
        ),
        Inequality::IV => {
            let mut b = annulus_lhs;
            b.push(term("-2*COMMON-R(I)", -2 * tally.common_r_i as i64));
            b.push(term("-2*COMMON-C(I)", -2 * tally.common_c_i as i64));
            b.push(term(
                "-2*COMMON-D(on A)",
                -2 * tally.common_d_on_annulus as i64,
            ));
            b.push(term(
                "-2*COMMON-D(off A)",
                -2 * tally.common_d_off_annulus as i64,
            ));
            (b, annulus_rhs)
        }
        Inequality::V => {
            let mut b = band_lhs;
            b.push(term("-2*COMMON-R(II)", -2 * tally.common_r_ii as i64));
            b.push(term("-2*COMMON-C(II)", -2 * tally.common_c_ii as i64));
            (b, band_rhs)
        }
    };
    let lhs = breakdown.iter().map(|t| t.value).sum();
    InequalityReport {
        which,
        lhs,
        rhs,
        holds: lhs >= rhs,
        breakdown,
    }
}

/// Everything the `analyze` command prints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnulusReport {
    pub n: usize,
    pub n_q: usize,
    pub sentinels: Sentinels,
    pub queen_counts: [usize; 9],
    pub annulus_size: usize,
    pub tally: CommonalityTally,
    pub inequalities: Vec<InequalityReport>,
}

pub fn analyze(placement: &Placement) -> Result<AnnulusReport> {
    let map = decompose(placement)?;
    let tally = tally_commonality(placement, &map);
    Ok(AnnulusReport {
        n: placement.n(),
        n_q: placement.n_q(),
        sentinels: map.sentinels,
        queen_counts: map.queen_counts,
        annulus_size: map.annulus_size,
        tally,
        inequalities: Inequality::ALL
            .iter()
            .map(|&w| evaluate(w, &map, &tally))
            .collect(),
    })
}

/// The four band counts `(q3+q4+q7, y1)`, `(q1+q2+q5, y2)`, `(q4+q1+q8, x1)`,
/// `(q2+q3+q6, x2)`; each left side must reach its right side.
pub fn band_counts(map: &RegionMap) -> [(usize, usize); 4] {
    let q = |i| map.q(i);
    let s = map.sentinels;
    [
        (q(3) + q(4) + q(7), s.y1),
        (q(1) + q(2) + q(5), s.y2),
        (q(4) + q(1) + q(8), s.x1),
        (q(2) + q(3) + q(6), s.x2),
    ]
}

/// Lines through `sq` that meet the annulus.
pub fn crossing_lines(sq: Square, map: &RegionMap) -> Vec<LineId> {
    lines_through(sq, map.placement.geometry())
        .map(|ls| {
            ls.into_iter()
                .filter(|l| line_crosses_annulus(*l, map))
                .collect()
        })
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, q: &[(usize, usize)]) -> Placement {
        Placement::of(n, q).unwrap()
    }

    #[test]
    fn sentinel_examples() {
        assert_eq!(
            sentinels(&p(5, &[(3, 3)])).unwrap(),
            Sentinels {
                x1: 0,
                x2: 0,
                y1: 0,
                y2: 0
            }
        );
        assert_eq!(
            sentinels(&p(5, &[(1, 1)])).unwrap(),
            Sentinels {
                x1: 1,
                x2: 0,
                y1: 1,
                y2: 0
            }
        );
        assert!(matches!(
            sentinels(&p(2, &[(1, 1), (1, 2), (2, 1), (2, 2)])),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            sentinels(&p(3, &[(1, 1), (2, 2), (3, 3)])),
            Err(Error::Degenerate(Degeneracy::NoEmptyColumn))
        ));
        assert!(matches!(
            sentinels(&p(3, &[(1, 1), (1, 2), (1, 3)])),
            Err(Error::Degenerate(Degeneracy::NoEmptyRow))
        ));
    }

    #[test]
    fn decompose_center_queen() {
        let m = decompose(&p(5, &[(3, 3)])).unwrap();
        assert_eq!(m.annulus_size, 16);
        assert_eq!(m.annulus_squares.len(), 16);
        assert_eq!(m.queen_counts, [0, 0, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn decompose_four_corners_and_center() {
        let m = decompose(&p(5, &[(1, 1), (1, 5), (5, 1), (5, 5), (3, 3)])).unwrap();
        assert_eq!(
            m.sentinels,
            Sentinels {
                x1: 1,
                x2: 1,
                y1: 1,
                y2: 1
            }
        );
        assert_eq!(m.annulus_size, 8);
        assert_eq!(m.annulus_squares.len(), 8);
        assert_eq!(m.queen_counts, [1, 1, 1, 1, 0, 0, 0, 0, 1]);
        assert_eq!(m.region_of(Square::new(1, 5)), Region::Q1);
        assert_eq!(m.region_of(Square::new(5, 5)), Region::Q2);
        assert_eq!(m.region_of(Square::new(5, 1)), Region::Q3);
        assert_eq!(m.region_of(Square::new(1, 1)), Region::Q4);
        assert_eq!(m.region_of(Square::new(3, 5)), Region::Q5);
        assert_eq!(m.region_of(Square::new(5, 3)), Region::Q6);
        assert_eq!(m.region_of(Square::new(3, 1)), Region::Q7);
        assert_eq!(m.region_of(Square::new(1, 3)), Region::Q8);
        assert_eq!(m.region_of(Square::new(2, 2)), Region::Annulus);
    }

    #[test]
    fn decompose_single_corner() {
        let m = decompose(&p(5, &[(1, 1)])).unwrap();
        assert_eq!((m.sentinels.x1, m.sentinels.y1), (1, 1));
        assert_eq!(m.annulus_size, 12);
        assert_eq!(m.annulus_squares.len(), 12);
        assert_eq!(m.q(4), 1);
        let mut frame: Vec<Square> = Vec::new();
        for y in 2..=5 {
            for x in 2..=5 {
                if x == 2 || x == 5 || y == 2 || y == 5 {
                    frame.push(Square::new(x, y));
                }
            }
        }
        assert_eq!(m.annulus_squares, frame);
    }

    #[test]
    fn collapsed_frame_is_degenerate() {
        // only column 3 is empty
        let q = p(5, &[(1, 1), (2, 1), (4, 1), (5, 1)]);
        assert!(sentinels(&q).is_ok());
        assert!(matches!(
            decompose(&q),
            Err(Error::Degenerate(Degeneracy::CollapsedFrame))
        ));
    }

    #[test]
    fn crossing_examples() {
        let m = decompose(&p(5, &[(3, 3)])).unwrap();
        assert!(line_crosses_annulus(LineId::diagonal(0), &m));
        let hits: Vec<_> = line_squares(LineId::diagonal(0), m.placement().geometry())
            .unwrap()
            .into_iter()
            .filter(|s| m.in_annulus(*s))
            .collect();
        assert_eq!(hits, vec![Square::new(1, 1), Square::new(5, 5)]);
        assert!(line_crosses_annulus(LineId::row(1), &m));

        let m = decompose(&p(5, &[(1, 1), (1, 5), (5, 1), (5, 5), (3, 3)])).unwrap();
        assert!(!line_crosses_annulus(LineId::anti_diagonal(2), &m));
        assert!(line_crosses_annulus(LineId::diagonal(0), &m));
    }

    #[test]
    fn tally_examples() {
        let q = p(5, &[(3, 3)]);
        let m = decompose(&q).unwrap();
        assert_eq!(tally_commonality(&q, &m), CommonalityTally::default());

        let q = p(5, &[(3, 2), (3, 4)]);
        let m = decompose(&q).unwrap();
        assert_eq!(
            tally_commonality(&q, &m),
            CommonalityTally {
                common_c_i: 1,
                ..Default::default()
            }
        );

        // anti-diagonal x+y=3 in the bottom-left corner, frame columns 3 and 6
        let q = p(6, &[(1, 2), (2, 1), (4, 4), (5, 5)]);
        let m = decompose(&q).unwrap();
        assert_eq!(
            m.sentinels,
            Sentinels {
                x1: 2,
                x2: 0,
                y1: 2,
                y2: 0
            }
        );
        assert!(!line_crosses_annulus(LineId::anti_diagonal(3), &m));
        let t = tally_commonality(&q, &m);
        assert_eq!(t.common_d_off_annulus, 1);
        // (4,4)-(5,5) share the main diagonal, which meets the frame at (3,3) and (6,6)
        assert_eq!(t.common_d_on_annulus, 1);
        assert_eq!(t.total(), 2);
    }

    #[test]
    fn inequality_examples() {
        let q = p(5, &[(1, 1)]);
        let r = check_inequality(Inequality::I, &q).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (4, 12, false));
        let r = check_inequality(Inequality::II, &q).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (4, 4, true));
        let r = check_inequality(Inequality::III, &q).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (1, 2, false));
        let r = check_inequality(Inequality::V, &q).unwrap();
        assert_eq!((r.lhs, r.rhs), (4, 4));
        assert!(matches!(
            check_inequality(Inequality::I, &p(2, &[(1, 1), (2, 2)])),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn breakdown_sums_to_lhs() {
        let q = p(7, &[(1, 1), (2, 1), (4, 4), (4, 6), (7, 7)]);
        let rep = analyze(&q).unwrap();
        for r in &rep.inequalities {
            assert_eq!(r.breakdown.iter().map(|t| t.value).sum::<i64>(), r.lhs);
            assert_eq!(r.holds, r.lhs >= r.rhs);
        }
    }

    #[test]
    fn annulus_hits_respect_region_caps() {
        let q = p(7, &[(1, 1), (4, 7), (4, 4), (7, 3)]);
        let m = decompose(&q).unwrap();
        for sq in q.queens() {
            let r = m.region_of(sq);
            assert!(m.annulus_hits(sq) <= r.annulus_cap(), "{sq} in {r}");
        }
    }
}
