//! Plain-text placement files.
//!
//! ```text
//! # comment
//! N=5
//! 1,1
//! 3,4
//! ```
//!
//! The first non-comment line gives the board side; each following line is
//! one queen as `x,y` (1-based, origin bottom-left). Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::board::{BoardGeometry, Placement, Square};
use crate::error::{Error, Result};

pub fn parse_placement(text: &str) -> Result<Placement> {
    let mut placement: Option<Placement> = None;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        match placement.as_mut() {
            None => {
                let value = line
                    .strip_prefix("N=")
                    .ok_or_else(|| err(format!("expected `N=<n>`, found `{line}`")))?;
                let n: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("invalid board size `{value}`")))?;
                let geometry = BoardGeometry::new(n).map_err(|e| err(e.to_string()))?;
                placement = Some(Placement::empty(geometry));
            }
            Some(p) => {
                let (xs, ys) = line
                    .split_once(',')
                    .ok_or_else(|| err(format!("expected `x,y`, found `{line}`")))?;
                let coord = |s: &str| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| err(format!("invalid coordinate `{}`", s.trim())))
                };
                let sq = Square::new(coord(xs)?, coord(ys)?);
                match p.insert(sq) {
                    Ok(true) => {}
                    Ok(false) => return Err(err(format!("duplicate square {sq}"))),
                    Err(e) => return Err(err(e.to_string())),
                }
            }
        }
    }
    placement.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `N=<n>` header".into(),
    })
}

pub fn format_placement(placement: &Placement) -> String {
    let mut out = format!("N={}\n", placement.n());
    for q in placement.queens() {
        let _ = writeln!(out, "{},{}", q.x, q.y);
    }
    out
}

pub fn read_placement(path: &Path) -> Result<Placement> {
    parse_placement(&std::fs::read_to_string(path)?)
}

pub fn write_placement(path: &Path, placement: &Placement) -> Result<()> {
    std::fs::write(path, format_placement(placement))?;
    Ok(())
}
