//! Patterns: finite lists of expressions in `x` and `y` whose values must
//! share a colour.

mod parse;
mod piece;

use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

pub use parse::parse_pattern;
pub use piece::{
    canonical_piece, evaluate_piece, factor_bilinear, to_bilinear, BilinearPiece, FactoredPiece,
    PatternPiece,
};

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not factorable at position {pos}: {msg}")]
    NotFactorable { pos: usize, msg: String },
    #[error("unsupported piece at position {pos}: {msg}")]
    Unsupported { pos: usize, msg: String },
    #[error("pattern must contain x and y (or hx and hy for a common h)")]
    MissingXY,
    #[error("pattern contains a ratio piece and is not symmetric in x and y")]
    NotSymmetric,
    #[error("invalid factored piece: {0}")]
    InvalidFactor(String),
}

impl PatternError {
    /// Byte offset into the source text, when the error has one.
    pub fn position(&self) -> Option<usize> {
        match self {
            PatternError::Syntax { pos, .. }
            | PatternError::NotFactorable { pos, .. }
            | PatternError::Unsupported { pos, .. } => Some(*pos),
            _ => None,
        }
    }
}

/// A normalized pattern: `x` and `y` first, then the remaining pieces in
/// order of first appearance, without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pieces: Vec<PatternPiece>,
    source: String,
}

impl Pattern {
    /// Normalizes a list of pieces.
    ///
    /// When `x` or `y` is missing but `hx` and `hy` are both present for some
    /// `h > 1`, every piece is divided by `h`; colouring `n` by the colour of
    /// `hn` shows the two patterns are equivalent.
    pub fn from_pieces(pieces: Vec<PatternPiece>, source: impl Into<String>) -> Result<Self, PatternError> {
        let mut pieces = pieces;
        let has = |ps: &[PatternPiece], p: &PatternPiece| ps.contains(p);
        if !(has(&pieces, &PatternPiece::X) && has(&pieces, &PatternPiece::Y)) {
            let h = pieces.iter().find_map(|p| match p {
                PatternPiece::Linear { cx, cy: 0 } if *cx > 1 => {
                    has(&pieces, &PatternPiece::Linear { cx: 0, cy: *cx }).then_some(*cx)
                }
                _ => None,
            });
            let Some(h) = h else {
                return Err(PatternError::MissingXY);
            };
            pieces = pieces
                .iter()
                .map(|p| rescale(p, h))
                .collect::<Result<_, _>>()?;
        }

        let mut out = vec![PatternPiece::X, PatternPiece::Y];
        for p in pieces {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(Pattern {
            pieces: out,
            source: source.into(),
        })
    }

    pub fn pieces(&self) -> &[PatternPiece] {
        &self.pieces
    }

    /// The pieces other than `x` and `y`.
    pub fn extra_pieces(&self) -> &[PatternPiece] {
        &self.pieces[2..]
    }

    /// The original text, or a rendering for machine-built patterns.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn bilinear_pieces(&self) -> Vec<&BilinearPiece> {
        self.pieces.iter().filter_map(PatternPiece::as_bilinear).collect()
    }

    pub fn has_ratio(&self) -> bool {
        self.pieces.iter().any(|p| matches!(p, PatternPiece::Ratio { .. }))
    }

    /// Builds `x, y, <pieces>` from bilinear pieces.
    pub fn from_bilinear(pieces: impl IntoIterator<Item = BilinearPiece>) -> Self {
        let pieces: Vec<_> = pieces.into_iter().map(PatternPiece::Bilinear).collect();
        let mut p = Pattern::from_pieces(
            [PatternPiece::X, PatternPiece::Y].into_iter().chain(pieces).collect(),
            "",
        )
        .expect("x and y present");
        p.source = p.to_string();
        p
    }

    /// Exchanges `x` and `y`. Ratio pieces block the swap.
    pub fn swap_xy(&self) -> Result<Pattern, PatternError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.swapped().ok_or(PatternError::NotSymmetric))
            .collect::<Result<Vec<_>, _>>()?;
        let mut swapped = Pattern::from_pieces(pieces, "")?;
        swapped.source = swapped.to_string();
        Ok(swapped)
    }

    /// Order-insensitive comparison of the pieces.
    pub fn same_pieces(&self, other: &Pattern) -> bool {
        self.pieces.len() == other.pieces.len() && self.pieces.iter().all(|p| other.pieces.contains(p))
    }
}

/// Free-function form of [`Pattern::swap_xy`].
pub fn swap_xy(pattern: &Pattern) -> Result<Pattern, PatternError> {
    pattern.swap_xy()
}

fn rescale(piece: &PatternPiece, h: i64) -> Result<PatternPiece, PatternError> {
    let hr = Rational::from_integer(h.into());
    Ok(match piece {
        PatternPiece::X | PatternPiece::Y => {
            return Err(PatternError::Unsupported {
                pos: 0,
                msg: format!("cannot mix x or y with the scaled pieces {h}x, {h}y"),
            })
        }
        PatternPiece::Linear { cx, cy } => {
            if cx % h != 0 || cy % h != 0 {
                return Err(PatternError::Unsupported {
                    pos: 0,
                    msg: format!("linear piece {piece} is not divisible by {h}"),
                });
            }
            normalize_linear(cx / h, cy / h)
        }
        PatternPiece::Ratio { q } => PatternPiece::Ratio { q: q / hr },
        PatternPiece::Bilinear(b) => PatternPiece::Bilinear(b.scaled_down(&hr)),
    })
}

pub(crate) fn normalize_linear(cx: i64, cy: i64) -> PatternPiece {
    match (cx, cy) {
        (1, 0) => PatternPiece::X,
        (0, 1) => PatternPiece::Y,
        _ => PatternPiece::Linear { cx, cy },
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Human-oriented rendering: bilinear pieces in factored form.
pub fn factored_display(pattern: &Pattern) -> String {
    pattern
        .pieces()
        .iter()
        .map(|p| match p {
            PatternPiece::Bilinear(b) => b.factored_display(),
            PatternPiece::Ratio { q } if q.is_one() => "y/x".to_string(),
            PatternPiece::Ratio { q } if q.is_positive() && q.is_integer() => format!("{q}y/x"),
            PatternPiece::Ratio { q } => format!("({q})y/x"),
            other => other.to_string(),
        })
        .collect::<Vec<_>>()
        .join(", ")
}
