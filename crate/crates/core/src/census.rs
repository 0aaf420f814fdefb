//! Classification of the tilings of a length `n + k` board by whether they
//! break at square `n`, and if not, which tile blocks the break.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::TilingError;
use crate::scheme::CoefficientScheme;
use crate::sequence::{SequenceSpec, TermValue};
use crate::tiling::{check_budget, for_each_tiling};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakabilityCensus {
    pub board_length: usize,
    pub break_position: usize,
    pub breakable_count: u64,
    /// Keyed by `(i, j)`: a blocking tile of length `i` with `j - 1` of its
    /// squares left of square `n`. Only observed keys are present.
    pub blocking_counts: BTreeMap<(usize, usize), u64>,
}

/// One `(i, j)` summand compared against its closed form
/// `a_i * S_{n-j} * S_{k-i+j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "as_string")]
    pub observed: BigInt,
    #[serde(serialize_with = "as_string")]
    pub predicted: BigInt,
}

impl CensusRow {
    pub fn agrees(&self) -> bool {
        self.observed == self.predicted
    }
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl BreakabilityCensus {
    pub fn total(&self) -> u64 {
        self.breakable_count + self.blocking_counts.values().sum::<u64>()
    }

    pub fn left(&self) -> usize {
        self.break_position
    }

    pub fn right(&self) -> usize {
        self.board_length - self.break_position
    }

    /// `S_n * S_k` from the recurrence.
    pub fn predicted_breakable(&self, scheme: &CoefficientScheme) -> TermValue {
        let s = SequenceSpec::new("census", scheme.clone());
        s.term(self.left() as i64) * s.term(self.right() as i64)
    }

    /// Every summand with a nonzero observed or predicted count, ordered by
    /// `(i, j)`. Blocking lengths range over the support up to `n + k`.
    pub fn rows(&self, scheme: &CoefficientScheme) -> Vec<CensusRow> {
        let s = SequenceSpec::new("census", scheme.clone());
        let (n, k) = (self.left() as i64, self.right() as i64);
        let mut rows = Vec::new();
        for i in scheme.support_up_to(self.board_length) {
            if i < 2 {
                continue;
            }
            for j in 1..i {
                let predicted =
                    s.term(n - j as i64) * s.term(k - i as i64 + j as i64) * scheme.coeff(i);
                let observed = BigInt::from(self.blocking_counts.get(&(i, j)).copied().unwrap_or(0));
                if !(observed.is_zero() && predicted.is_zero()) {
                    rows.push(CensusRow { i, j, observed, predicted });
                }
            }
        }
        rows
    }

    /// Whether the breakable count and every blocking summand match the
    /// closed forms, and no blocking key falls outside the support.
    pub fn matches(&self, scheme: &CoefficientScheme) -> bool {
        let keys_ok = self
            .blocking_counts
            .keys()
            .all(|&(i, j)| i >= 2 && scheme.in_support(i) && (1..i).contains(&j));
        keys_ok
            && BigInt::from(self.breakable_count) == self.predicted_breakable(scheme)
            && self.rows(scheme).iter().all(CensusRow::agrees)
    }
}

pub fn breakability_census(
    scheme: &CoefficientScheme,
    n: usize,
    k: usize,
    budget: u64,
) -> Result<BreakabilityCensus, TilingError> {
    if n == 0 || k == 0 {
        return Err(TilingError::Argument(format!(
            "census needs n, k >= 1 (got n={n}, k={k})"
        )));
    }
    check_budget(scheme, n + k, budget)?;
    let mut census = BreakabilityCensus {
        board_length: n + k,
        break_position: n,
        breakable_count: 0,
        blocking_counts: BTreeMap::new(),
    };
    for_each_tiling(scheme, n + k, |tiling| {
        let mut start = 0;
        for tile in tiling.tiles() {
            let end = start + tile.len;
            if end == n {
                census.breakable_count += 1;
                return;
            }
            if end > n {
                // squares start+1..=end, with square n strictly inside
                *census.blocking_counts.entry((tile.len, n - start)).or_insert(0) += 1;
                return;
            }
            start = end;
        }
    });
    Ok(census)
}
