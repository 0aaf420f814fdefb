//! Explicit bijection `G_{n-1} x {0, 1} -> G_n ∪ G_{n-m-1}` for uncolored
//! m-nacci tilings, where `G_j` is the set of tilings of a length-`j` board
//! with tiles of lengths `1..=m`.
//!
//! Bit 0 appends a monomer. Bit 1 grows a final `(i-1)`-mer into an `i`-mer
//! when `i <= m`, and removes a final `m`-mer otherwise.

use std::collections::{HashMap, HashSet};

use crate::error::TilingError;
use crate::scheme::CoefficientScheme;
use crate::tiling::{enumerate_tilings, Tile, Tiling};

/// A tiling tagged with the side of the disjoint union it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tagged {
    /// Member of `G_n`.
    Full(Tiling),
    /// Member of `G_{n-m-1}`.
    Short(Tiling),
}

fn check_tiling(m: usize, tiling: &Tiling, expected_len: usize) -> Result<(), TilingError> {
    if m < 2 {
        return Err(TilingError::Unsupported(format!("m = {m}")));
    }
    if let Some(t) = tiling.tiles().iter().find(|t| t.color != 1 || t.len == 0 || t.len > m) {
        return Err(TilingError::Unsupported(format!(
            "tile {}:{} is not an uncolored tile of length 1..={m}",
            t.len, t.color
        )));
    }
    if tiling.board_length() != expected_len {
        return Err(TilingError::Argument(format!(
            "tiling covers {} squares, expected {expected_len}",
            tiling.board_length()
        )));
    }
    Ok(())
}

fn check_n(m: usize, n: usize) -> Result<(), TilingError> {
    if n < m + 1 {
        Err(TilingError::Precondition { m, n })
    } else {
        Ok(())
    }
}

/// Image of `(tiling, bit)` where `tiling` covers `n - 1` squares.
pub fn shift_forward(m: usize, tiling: &Tiling, bit: bool) -> Result<Tagged, TilingError> {
    let n = tiling.board_length() + 1;
    if m < 2 {
        return Err(TilingError::Unsupported(format!("m = {m}")));
    }
    check_n(m, n)?;
    check_tiling(m, tiling, n - 1)?;
    let mut out = tiling.clone();
    if !bit {
        out.push(Tile::plain(1));
        return Ok(Tagged::Full(out));
    }
    let last = out.pop().expect("n - 1 >= m >= 2 squares");
    if last.len == m {
        Ok(Tagged::Short(out))
    } else {
        out.push(Tile::plain(last.len + 1));
        Ok(Tagged::Full(out))
    }
}

/// Preimage of a tagged tiling, for the board length `n` of the `Full` side.
pub fn shift_inverse(m: usize, n: usize, tagged: &Tagged) -> Result<(Tiling, bool), TilingError> {
    if m < 2 {
        return Err(TilingError::Unsupported(format!("m = {m}")));
    }
    check_n(m, n)?;
    match tagged {
        Tagged::Full(t) => {
            check_tiling(m, t, n)?;
            let mut out = t.clone();
            let last = out.pop().expect("n >= 3 squares");
            if last.len == 1 {
                Ok((out, false))
            } else {
                out.push(Tile::plain(last.len - 1));
                Ok((out, true))
            }
        }
        Tagged::Short(t) => {
            check_tiling(m, t, n - m - 1)?;
            let mut out = t.clone();
            out.push(Tile::plain(m));
            Ok((out, true))
        }
    }
}

/// The full forward and inverse tables for one `(m, n)`.
#[derive(Debug, Clone)]
pub struct BijectionCertificate {
    pub m: usize,
    pub n: usize,
    pub forward: HashMap<(Tiling, bool), Tagged>,
    pub inverse: HashMap<Tagged, (Tiling, bool)>,
}

impl BijectionCertificate {
    pub fn build(m: usize, n: usize) -> Result<Self, TilingError> {
        check_n(m, n)?;
        let scheme = mnacci(m)?;
        let mut forward = HashMap::new();
        for t in enumerate_tilings(&scheme, n - 1) {
            for bit in [false, true] {
                let image = shift_forward(m, &t, bit)?;
                forward.insert((t.clone(), bit), image);
            }
        }
        let mut inverse = HashMap::new();
        let codomain = enumerate_tilings(&scheme, n)
            .into_iter()
            .map(Tagged::Full)
            .chain(enumerate_tilings(&scheme, n - m - 1).into_iter().map(Tagged::Short));
        for target in codomain {
            let pre = shift_inverse(m, n, &target)?;
            inverse.insert(target, pre);
        }
        Ok(BijectionCertificate { m, n, forward, inverse })
    }

    /// Both compositions are identities and the forward images are exactly
    /// the codomain.
    pub fn verify(&self) -> bool {
        let images: HashSet<&Tagged> = self.forward.values().collect();
        let codomain: HashSet<&Tagged> = self.inverse.keys().collect();
        images == codomain
            && self.forward.len() == self.inverse.len()
            && self
                .forward
                .iter()
                .all(|(pre, image)| self.inverse.get(image) == Some(pre))
            && self
                .inverse
                .iter()
                .all(|(image, pre)| self.forward.get(pre) == Some(image))
    }

    /// `(|G_n|, |G_{n-m-1}|, |G_{n-1}|)` as seen by the tables.
    pub fn cardinalities(&self) -> (usize, usize, usize) {
        let full = self.inverse.keys().filter(|t| matches!(t, Tagged::Full(_))).count();
        let short = self.inverse.len() - full;
        (full, short, self.forward.len() / 2)
    }
}

fn mnacci(m: usize) -> Result<CoefficientScheme, TilingError> {
    if m < 2 {
        return Err(TilingError::Unsupported(format!("m = {m}")));
    }
    Ok(CoefficientScheme::Finite(vec![1; m]))
}

/// Checks that a scheme is an uncolored m-nacci scheme usable by the
/// bijection, returning `m`.
pub fn require_mnacci(scheme: &CoefficientScheme) -> Result<usize, TilingError> {
    match scheme.mnacci_order() {
        Some(m) if m >= 2 => Ok(m),
        _ => Err(TilingError::Unsupported(scheme.to_string())),
    }
}
