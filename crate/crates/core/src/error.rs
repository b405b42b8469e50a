use thiserror::Error;

use crate::board::{LineId, Square};

pub type Result<T> = std::result::Result<T, Error>;

/// Why a placement has no sentinel/annulus decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    NoEmptyRow,
    NoEmptyColumn,
    /// Only one empty column or only one empty row: the frame collapses to a
    /// single line and has no inside.
    CollapsedFrame,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degeneracy::NoEmptyRow => write!(f, "no empty row"),
            Degeneracy::NoEmptyColumn => write!(f, "no empty column"),
            Degeneracy::CollapsedFrame => write!(f, "extreme empty lines coincide"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("board side must be at least 1")]
    EmptyBoard,
    #[error("square {square} lies outside the {n}x{n} board")]
    OutOfBoard { square: Square, n: usize },
    #[error("line {line} is out of range for n={n}")]
    LineOutOfRange { line: LineId, n: usize },
    #[error("square {0} occupied twice")]
    DuplicateSquare(Square),
    #[error("visibility graph has no vertices")]
    EmptyGraph,
    #[error("decomposition not applicable: {0}")]
    Degenerate(Degeneracy),
    #[error("color count k must be at least 1")]
    InvalidColorCount,
    #[error("board side {n} exceeds the {method} limit of {limit}")]
    BoardTooLarge {
        n: usize,
        limit: usize,
        method: &'static str,
    },
    #[error("no placement on the {n}x{n} board satisfies the {variant} variant")]
    Infeasible { n: usize, variant: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
