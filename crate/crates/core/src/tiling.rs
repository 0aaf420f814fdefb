//! Exhaustive enumeration of colored tilings of a `1 x n` board.

use std::fmt;

use num_bigint::BigInt;

use crate::error::TilingError;
use crate::scheme::CoefficientScheme;
use crate::sequence::{SequenceSpec, TermValue};

/// Enumeration refuses boards predicted to have more tilings than this.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A tile of `len` squares painted in color `color` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub len: usize,
    pub color: u64,
}

impl Tile {
    pub fn new(len: usize, color: u64) -> Self {
        Tile { len, color }
    }

    /// Single-color tile, as used by uncolored schemes.
    pub fn plain(len: usize) -> Self {
        Tile { len, color: 1 }
    }
}

/// Tiles listed left to right. The empty tiling covers the empty board.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tiling {
    tiles: Vec<Tile>,
}

impl Tiling {
    pub fn new(tiles: Vec<Tile>) -> Self {
        Tiling { tiles }
    }

    /// Uncolored tiling from a list of tile lengths.
    pub fn plain(lengths: &[usize]) -> Self {
        Tiling {
            tiles: lengths.iter().map(|&l| Tile::plain(l)).collect(),
        }
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn board_length(&self) -> usize {
        self.tiles.iter().map(|t| t.len).sum()
    }

    pub fn last(&self) -> Option<&Tile> {
        self.tiles.last()
    }

    pub(crate) fn push(&mut self, tile: Tile) {
        self.tiles.push(tile);
    }

    pub(crate) fn pop(&mut self) -> Option<Tile> {
        self.tiles.pop()
    }

    /// Whether every tile has positive length and a color within `1..=a_len`.
    pub fn is_valid_for(&self, scheme: &CoefficientScheme) -> bool {
        self.tiles
            .iter()
            .all(|t| t.len >= 1 && t.color >= 1 && t.color <= scheme.coeff(t.len))
    }
}

impl fmt::Display for Tiling {
    /// Renders as `len:color` pairs joined by `|`; the empty tiling renders
    /// as `(empty)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tiles.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, t) in self.tiles.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{}:{}", t.len, t.color)?;
        }
        Ok(())
    }
}

/// Calls `visit` on every tiling of length `n` in lexicographic order of the
/// `(length, color)` sequence.
pub fn for_each_tiling<F>(scheme: &CoefficientScheme, n: usize, mut visit: F)
where
    F: FnMut(&Tiling),
{
    fn go<F: FnMut(&Tiling)>(
        scheme: &CoefficientScheme,
        remaining: usize,
        current: &mut Tiling,
        visit: &mut F,
    ) {
        if remaining == 0 {
            visit(current);
            return;
        }
        for len in 1..=scheme.max_tile(remaining) {
            for color in 1..=scheme.coeff(len) {
                current.push(Tile { len, color });
                go(scheme, remaining - len, current, visit);
                current.pop();
            }
        }
    }
    let mut current = Tiling::default();
    go(scheme, n, &mut current, &mut visit);
}

/// Every valid tiling of a length-`n` board, in lexicographic order.
///
/// Unbounded; see [`check_budget`] before calling this on large boards.
pub fn enumerate_tilings(scheme: &CoefficientScheme, n: usize) -> Vec<Tiling> {
    let mut out = Vec::new();
    for_each_tiling(scheme, n, |t| out.push(t.clone()));
    out
}

/// Refuses boards whose recurrence-predicted tiling count exceeds `budget`.
pub fn check_budget(scheme: &CoefficientScheme, n: usize, budget: u64) -> Result<TermValue, TilingError> {
    let predicted = SequenceSpec::new("budget", scheme.clone()).term_uncached(n as u64);
    if predicted > BigInt::from(budget) {
        return Err(TilingError::BudgetExceeded {
            predicted: predicted.to_string(),
            budget,
        });
    }
    Ok(predicted)
}

/// Number of tilings of a length-`n` board, counted by enumeration.
pub fn count_tilings(scheme: &CoefficientScheme, n: usize, budget: u64) -> Result<TermValue, TilingError> {
    check_budget(scheme, n, budget)?;
    let mut count: u64 = 0;
    for_each_tiling(scheme, n, |_| count += 1);
    Ok(BigInt::from(count))
}

/// Whether squares `m` and `m + 1` lie in different tiles.
pub fn is_breakable(tiling: &Tiling, m: usize) -> Result<bool, TilingError> {
    let board_length = tiling.board_length();
    if m == 0 || m >= board_length {
        return Err(TilingError::PositionOutOfRange {
            position: m,
            board_length,
        });
    }
    let mut edge = 0;
    for t in tiling.tiles() {
        edge += t.len;
        if edge >= m {
            return Ok(edge == m);
        }
    }
    unreachable!("m < board length")
}
