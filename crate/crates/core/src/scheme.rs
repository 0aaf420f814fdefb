//! Coefficient schemes: the color count `a_k` available for each tile length.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SchemeError;

/// Affine parameters are capped so that `a_k` fits a `u64` for any board
/// length that can be computed in practice.
const AFFINE_LIMIT: u64 = 1 << 32;

/// Rule producing `a_k` for every `k >= 1` in a full-history scheme.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FullHistoryRule {
    /// `a_k = c`.
    Constant(u64),
    /// `a_k = alpha + beta * k`.
    Affine { alpha: i64, beta: i64 },
    /// `a_k = prefix[k - 1]` while `k <= prefix.len()`, then `tail(k)`.
    TableWithTail {
        prefix: Vec<u64>,
        tail: Box<FullHistoryRule>,
    },
}

impl FullHistoryRule {
    fn value(&self, k: usize) -> u64 {
        match self {
            FullHistoryRule::Constant(c) => *c,
            FullHistoryRule::Affine { alpha, beta } => {
                let v = *alpha as i128 + *beta as i128 * k as i128;
                u64::try_from(v).expect("affine rule validated non-negative")
            }
            FullHistoryRule::TableWithTail { prefix, tail } => match prefix.get(k - 1) {
                Some(v) => *v,
                None => tail.value(k),
            },
        }
    }

    /// Checks `value(k) >= 0` for every `k >= first`.
    fn check_from(&self, first: usize) -> Result<(), SchemeError> {
        match self {
            FullHistoryRule::Constant(_) => Ok(()),
            FullHistoryRule::Affine { alpha, beta } => {
                let at_first = *alpha as i128 + *beta as i128 * first as i128;
                if *beta < 0 || at_first < 0 {
                    Err(SchemeError::NegativeRule(format!(
                        "a_k = {alpha} + {beta}*k is negative for some k >= {first}"
                    )))
                } else if alpha.unsigned_abs() > AFFINE_LIMIT || beta.unsigned_abs() > AFFINE_LIMIT {
                    Err(SchemeError::Descriptor(format!(
                        "affine parameters must not exceed {AFFINE_LIMIT} in magnitude"
                    )))
                } else {
                    Ok(())
                }
            }
            FullHistoryRule::TableWithTail { prefix, tail } => {
                tail.check_from(first.max(prefix.len() + 1))
            }
        }
    }
}

impl fmt::Display for FullHistoryRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FullHistoryRule::Constant(c) => write!(f, "a_k={c}"),
            FullHistoryRule::Affine { alpha, beta } => write!(f, "a_k={alpha}+{beta}k"),
            FullHistoryRule::TableWithTail { prefix, tail } => {
                let p: Vec<String> = prefix.iter().map(u64::to_string).collect();
                write!(f, "[{}]+({tail})", p.join(","))
            }
        }
    }
}

/// Tile-length-indexed color counts defining a recurrence.
///
/// Finite schemes store `a_1..a_m` with trailing zeros stripped, so an empty
/// list is the degenerate scheme in which only the empty board has a tiling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefficientScheme {
    Finite(Vec<u64>),
    FullHistory(FullHistoryRule),
}

impl CoefficientScheme {
    /// Builds a finite scheme from signed input, rejecting negative entries.
    pub fn finite<I>(coeffs: I) -> Result<Self, SchemeError>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut out = Vec::new();
        for (i, c) in coeffs.into_iter().enumerate() {
            if c < 0 {
                return Err(SchemeError::NegativeCoefficient {
                    index: i + 1,
                    value: c,
                });
            }
            out.push(c as u64);
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        Ok(CoefficientScheme::Finite(out))
    }

    pub fn full_history(rule: FullHistoryRule) -> Result<Self, SchemeError> {
        rule.check_from(1)?;
        Ok(CoefficientScheme::FullHistory(rule))
    }

    /// `a_k = k`, the full-history scheme whose terms are `F_{2n}`.
    pub fn affine_identity() -> Self {
        CoefficientScheme::FullHistory(FullHistoryRule::Affine { alpha: 0, beta: 1 })
    }

    /// The color count `a_k` of a length-`k` tile; zero for `k == 0`.
    pub fn coeff(&self, k: usize) -> u64 {
        if k == 0 {
            return 0;
        }
        match self {
            CoefficientScheme::Finite(c) => c.get(k - 1).copied().unwrap_or(0),
            CoefficientScheme::FullHistory(rule) => rule.value(k),
        }
    }

    /// Order `m` of a finite scheme, `None` for full-history schemes.
    pub fn order(&self) -> Option<usize> {
        match self {
            CoefficientScheme::Finite(c) => Some(c.len()),
            CoefficientScheme::FullHistory(_) => None,
        }
    }

    pub fn is_full_history(&self) -> bool {
        matches!(self, CoefficientScheme::FullHistory(_))
    }

    /// Largest tile length that can matter on a board of length `n`.
    pub fn max_tile(&self, n: usize) -> usize {
        match self {
            CoefficientScheme::Finite(c) => c.len().min(n),
            CoefficientScheme::FullHistory(_) => n,
        }
    }

    pub fn in_support(&self, k: usize) -> bool {
        self.coeff(k) > 0
    }

    /// The support set `{ k : a_k > 0 }` intersected with `1..=limit`.
    ///
    /// For finite schemes every element is at most `m`, so passing
    /// `usize::MAX` is fine there.
    pub fn support_up_to(&self, limit: usize) -> BTreeSet<usize> {
        (1..=self.max_tile(limit))
            .filter(|&k| self.in_support(k))
            .collect()
    }

    /// Uncolored m-nacci scheme (`a_1 = ... = a_m = 1`), if this is one.
    pub fn mnacci_order(&self) -> Option<usize> {
        match self {
            CoefficientScheme::Finite(c) if !c.is_empty() && c.iter().all(|&a| a == 1) => {
                Some(c.len())
            }
            _ => None,
        }
    }
}

impl fmt::Display for CoefficientScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientScheme::Finite(c) if c.is_empty() => f.write_str("0"),
            CoefficientScheme::Finite(c) => {
                let parts: Vec<String> = c.iter().map(u64::to_string).collect();
                f.write_str(&parts.join(","))
            }
            CoefficientScheme::FullHistory(rule) => write!(f, "full-history {rule}"),
        }
    }
}

/// Serialized scheme description, as read from descriptor files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDescriptor {
    pub name: String,
    pub kind: SchemeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleDescriptor>,
    #[serde(default)]
    pub offset: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    Finite,
    FullHistory,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleDescriptor {
    Constant { c: i64 },
    Affine { alpha: i64, beta: i64 },
    TableTail {
        prefix: Vec<i64>,
        tail: Box<RuleDescriptor>,
    },
}

impl RuleDescriptor {
    fn to_rule(&self) -> Result<FullHistoryRule, SchemeError> {
        Ok(match self {
            RuleDescriptor::Constant { c } => {
                if *c < 0 {
                    return Err(SchemeError::NegativeRule(format!("constant {c}")));
                }
                FullHistoryRule::Constant(*c as u64)
            }
            RuleDescriptor::Affine { alpha, beta } => FullHistoryRule::Affine {
                alpha: *alpha,
                beta: *beta,
            },
            RuleDescriptor::TableTail { prefix, tail } => {
                let mut values = Vec::with_capacity(prefix.len());
                for (i, &v) in prefix.iter().enumerate() {
                    if v < 0 {
                        return Err(SchemeError::NegativeCoefficient {
                            index: i + 1,
                            value: v,
                        });
                    }
                    values.push(v as u64);
                }
                FullHistoryRule::TableWithTail {
                    prefix: values,
                    tail: Box::new(tail.to_rule()?),
                }
            }
        })
    }
}

impl SchemeDescriptor {
    /// Normalizes the descriptor into a validated scheme.
    pub fn to_scheme(&self) -> Result<CoefficientScheme, SchemeError> {
        match (self.kind, &self.coeffs, &self.rule) {
            (SchemeKind::Finite, Some(c), None) => CoefficientScheme::finite(c.iter().copied()),
            (SchemeKind::FullHistory, None, Some(r)) => {
                CoefficientScheme::full_history(r.to_rule()?)
            }
            (SchemeKind::Finite, _, _) => Err(SchemeError::Descriptor(
                "finite schemes take `coeffs` and no `rule`".into(),
            )),
            (SchemeKind::FullHistory, _, _) => Err(SchemeError::Descriptor(
                "full_history schemes take `rule` and no `coeffs`".into(),
            )),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SchemeError> {
        serde_json::from_str(text).map_err(|e| SchemeError::Descriptor(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_support() {
        let fib = CoefficientScheme::finite([1, 1]).unwrap();
        assert_eq!(fib.support_up_to(usize::MAX), BTreeSet::from([1, 2]));
        let pell = CoefficientScheme::finite([2, 1]).unwrap();
        assert_eq!(pell.support_up_to(usize::MAX), BTreeSet::from([1, 2]));
        let padovan = CoefficientScheme::finite([0, 1, 1]).unwrap();
        assert_eq!(padovan.support_up_to(usize::MAX), BTreeSet::from([2, 3]));
    }

    #[test]
    fn coeff_lookup() {
        let fib = CoefficientScheme::finite([1, 1]).unwrap();
        assert_eq!(fib.coeff(2), 1);
        assert_eq!(fib.coeff(7), 0);
        assert_eq!(CoefficientScheme::affine_identity().coeff(5), 5);
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let s = CoefficientScheme::finite([1, 0, 1, 0, 0]).unwrap();
        assert_eq!(s, CoefficientScheme::Finite(vec![1, 0, 1]));
        assert_eq!(s.order(), Some(3));
        let zero = CoefficientScheme::finite([0, 0]).unwrap();
        assert_eq!(zero.order(), Some(0));
        assert!(zero.support_up_to(100).is_empty());
    }

    #[test]
    fn negative_coefficients_rejected() {
        assert_eq!(
            CoefficientScheme::finite([1, -1]),
            Err(SchemeError::NegativeCoefficient { index: 2, value: -1 })
        );
        assert!(CoefficientScheme::full_history(FullHistoryRule::Affine { alpha: 5, beta: -1 }).is_err());
        assert!(CoefficientScheme::full_history(FullHistoryRule::Affine { alpha: -2, beta: 1 }).is_err());
        assert!(CoefficientScheme::full_history(FullHistoryRule::Affine { alpha: -1, beta: 1 }).is_ok());
        // the table covers k = 1..3, so the tail only needs to be valid from k = 4
        let rule = FullHistoryRule::TableWithTail {
            prefix: vec![1, 1, 1],
            tail: Box::new(FullHistoryRule::Affine { alpha: -4, beta: 1 }),
        };
        assert!(CoefficientScheme::full_history(rule).is_ok());
        let rule = FullHistoryRule::TableWithTail {
            prefix: vec![1, 1],
            tail: Box::new(FullHistoryRule::Affine { alpha: -4, beta: 1 }),
        };
        assert!(CoefficientScheme::full_history(rule).is_err());
    }

    #[test]
    fn table_with_tail_values() {
        let s = CoefficientScheme::full_history(FullHistoryRule::TableWithTail {
            prefix: vec![3, 0],
            tail: Box::new(FullHistoryRule::Constant(2)),
        })
        .unwrap();
        let got: Vec<u64> = (1..=5).map(|k| s.coeff(k)).collect();
        assert_eq!(got, vec![3, 0, 2, 2, 2]);
        assert_eq!(s.support_up_to(4), BTreeSet::from([1, 3, 4]));
    }

    #[test]
    fn descriptor_parsing() {
        let d = SchemeDescriptor::from_json(
            r#"{"name":"pell","kind":"finite","coeffs":[2,1],"offset":-1}"#,
        )
        .unwrap();
        assert_eq!(d.offset, -1);
        assert_eq!(d.to_scheme().unwrap(), CoefficientScheme::Finite(vec![2, 1]));

        let d = SchemeDescriptor::from_json(
            r#"{"name":"fh","kind":"full_history",
                "rule":{"type":"table_tail","prefix":[1],"tail":{"type":"affine","alpha":0,"beta":1}}}"#,
        )
        .unwrap();
        assert_eq!(d.offset, 0);
        assert_eq!(d.to_scheme().unwrap().coeff(4), 4);

        let bad = SchemeDescriptor::from_json(r#"{"name":"x","kind":"finite","coeffs":[1,-3]}"#)
            .unwrap();
        assert!(bad.to_scheme().is_err());
        let bad = SchemeDescriptor::from_json(r#"{"name":"x","kind":"full_history","coeffs":[1]}"#)
            .unwrap();
        assert!(matches!(bad.to_scheme(), Err(SchemeError::Descriptor(_))));
        assert!(SchemeDescriptor::from_json(r#"{"name":"x","kind":"weird"}"#).is_err());
    }
}
