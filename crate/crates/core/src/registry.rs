//! Named, index-shifted views of the built-in sequences.
//!
//! Every view reads `Value(n) = S_{n + offset}` from an underlying scheme
//! with `S_0 = 1`. Negative underlying indices read as zero, so a classical
//! sequence whose standard initial values disagree with zero extension (the
//! Padovan `P_0 = 1`) matches only from the first index that is reached by
//! the recurrence.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use crate::error::SchemeError;
use crate::scheme::{CoefficientScheme, FullHistoryRule};
use crate::sequence::{SequenceSpec, TermValue};

#[derive(Debug, Clone)]
pub struct ClassicView {
    name: String,
    aliases: Vec<String>,
    base: Arc<SequenceSpec>,
    offset: i64,
    citation: String,
}

impl ClassicView {
    pub fn new(name: impl Into<String>, scheme: CoefficientScheme, offset: i64) -> Self {
        let name = name.into();
        ClassicView {
            base: Arc::new(SequenceSpec::new(name.clone(), scheme)),
            name,
            aliases: Vec::new(),
            offset,
            citation: String::new(),
        }
    }

    fn with_aliases(mut self, aliases: &[&str]) -> Self {
        self.aliases = aliases.iter().map(|a| a.to_string()).collect();
        self
    }

    fn cited(mut self, citation: &str) -> Self {
        self.citation = citation.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn aliases(&self) -> &[String] {
        &self.aliases
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn citation(&self) -> &str {
        &self.citation
    }

    pub fn base(&self) -> &SequenceSpec {
        &self.base
    }

    pub fn scheme(&self) -> &CoefficientScheme {
        self.base.scheme()
    }

    /// `S_{n + offset}`, zero when the shifted index is negative.
    pub fn value(&self, n: i64) -> TermValue {
        match n.checked_add(self.offset) {
            Some(i) => self.base.term(i),
            None if n < 0 => BigInt::from(0),
            None => panic!("index {n} + {} overflows", self.offset),
        }
    }

    fn answers_to(&self, name: &str) -> bool {
        self.name == name || self.aliases.iter().any(|a| a == name)
    }
}

/// Reference values used to validate the hard-coded offsets: the first index
/// and eight consecutive values from there.
fn reference_values(name: &str) -> Option<(i64, [u64; 8])> {
    Some(match name {
        "fibonacci" => (0, [0, 1, 1, 2, 3, 5, 8, 13]),
        "pell" => (0, [0, 1, 2, 5, 12, 29, 70, 169]),
        "jacobsthal" => (0, [0, 1, 1, 3, 5, 11, 21, 43]),
        "narayana" => (0, [1, 1, 1, 2, 3, 4, 6, 9]),
        "padovan" => (3, [1, 0, 1, 1, 1, 2, 2, 3]),
        "tribonacci" => (0, [0, 0, 1, 1, 2, 4, 7, 13]),
        "tetranacci" => (0, [0, 0, 0, 1, 1, 2, 4, 8]),
        "mnacci(2)" => (0, [1, 1, 2, 3, 5, 8, 13, 21]),
        "mnacci(3)" => (0, [1, 1, 2, 4, 7, 13, 24, 44]),
        "mnacci(4)" => (0, [1, 1, 2, 4, 8, 15, 29, 56]),
        "mnacci(5)" => (0, [1, 1, 2, 4, 8, 16, 31, 61]),
        "fh-affine" => (0, [1, 1, 3, 8, 21, 55, 144, 377]),
        "fh-ones" => (0, [1, 1, 2, 4, 8, 16, 32, 64]),
        _ => return None,
    })
}

fn finite(coeffs: &[i64]) -> CoefficientScheme {
    CoefficientScheme::finite(coeffs.iter().copied()).expect("built-in coefficients are non-negative")
}

fn mnacci_view(m: usize) -> ClassicView {
    let ones = vec![1i64; m];
    ClassicView::new(format!("mnacci({m})"), finite(&ones), 0)
        .with_aliases(&[&format!("mnacci{m}")])
        .cited(match m {
            2 => "A000045 (unshifted)",
            3 => "A000073 (unshifted)",
            4 => "A000078 (unshifted)",
            _ => "m-nacci numbers (unshifted)",
        })
}

/// The set of built-in views.
#[derive(Debug, Clone)]
pub struct Registry {
    views: Vec<ClassicView>,
}

impl Registry {
    /// Builds the built-in views without validating them.
    pub fn builtin() -> Self {
        let mut views = vec![
            ClassicView::new("fibonacci", finite(&[1, 1]), -1)
                .with_aliases(&["F"])
                .cited("A000045"),
            ClassicView::new("pell", finite(&[2, 1]), -1).cited("A000129"),
            ClassicView::new("jacobsthal", finite(&[1, 2]), -1)
                .with_aliases(&["J"])
                .cited("A001045"),
            ClassicView::new("narayana", finite(&[1, 0, 1]), 0)
                .with_aliases(&["N"])
                .cited("A000930"),
            ClassicView::new("padovan", finite(&[0, 1, 1]), -3).cited("A000931"),
            ClassicView::new("tribonacci", finite(&[1, 1, 1]), -2)
                .with_aliases(&["T"])
                .cited("A000073"),
            ClassicView::new("tetranacci", finite(&[1, 1, 1, 1]), -3)
                .with_aliases(&["Q"])
                .cited("A000078"),
        ];
        views.extend((2..=5).map(mnacci_view));
        views.push(
            ClassicView::new("fh-affine", CoefficientScheme::affine_identity(), 0)
                .with_aliases(&["fh_affine"])
                .cited("full history a_k = k; S_n = F_{2n} for n >= 1 (A001906)"),
        );
        views.push(
            ClassicView::new(
                "fh-ones",
                CoefficientScheme::full_history(FullHistoryRule::Constant(1))
                    .expect("constant rule is valid"),
                0,
            )
            .with_aliases(&["fh_ones"])
            .cited("full history a_k = 1; compositions, S_n = 2^(n-1) for n >= 1"),
        );
        Registry { views }
    }

    /// Checks every view with reference values against them.
    pub fn validate(&self) -> Result<(), SchemeError> {
        for view in &self.views {
            let Some((start, expected)) = reference_values(view.name()) else {
                continue;
            };
            for (i, want) in expected.iter().enumerate() {
                let n = start + i as i64;
                let got = view.value(n);
                if got != BigInt::from(*want) {
                    return Err(SchemeError::OffsetMismatch {
                        name: view.name().to_string(),
                        n,
                        expected: want.to_string(),
                        actual: got.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn views(&self) -> &[ClassicView] {
        &self.views
    }

    /// Resolves a name or alias. `mnacci(m)` / `mnaccim` resolve for any
    /// `1 <= m <= 64`, sharing the registered view when one exists, and
    /// `horadam_a_b` resolves to `S_n = a S_{n-1} + b S_{n-2}` with
    /// `S_0 = 0`, `S_1 = 1`.
    pub fn lookup(&self, name: &str) -> Result<ClassicView, SchemeError> {
        if let Some(v) = self.views.iter().find(|v| v.answers_to(name)) {
            return Ok(v.clone());
        }
        if let Some(view) = parse_mnacci(name).map(mnacci_view) {
            return Ok(view);
        }
        parse_horadam(name)
            .map(|(a, b)| horadam_view(name, a, b))
            .ok_or_else(|| SchemeError::NotFound(name.to_string()))
    }

    /// Registered views backed by finite schemes.
    pub fn finite_views(&self) -> impl Iterator<Item = &ClassicView> {
        self.views.iter().filter(|v| !v.scheme().is_full_history())
    }
}

fn parse_mnacci(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("mnacci")?;
    let digits = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&m: &usize| (1..=64).contains(&m))
}

fn parse_horadam(name: &str) -> Option<(u64, u64)> {
    let (a, b) = name.strip_prefix("horadam_")?.split_once('_')?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    if !digits(a) || !digits(b) {
        return None;
    }
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn horadam_view(name: &str, a: u64, b: u64) -> ClassicView {
    ClassicView::new(name, CoefficientScheme::Finite(vec![a, b]), -1)
        .cited("two-term Horadam sequence, S_0 = 0, S_1 = 1")
}

/// The validated built-in registry, shared process-wide.
///
/// Panics on first use if an offset disagrees with its reference values.
pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let r = Registry::builtin();
        if let Err(e) = r.validate() {
            panic!("built-in registry failed validation: {e}");
        }
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(name: &str, n: i64) -> BigInt {
        registry().lookup(name).unwrap().value(n)
    }

    #[test]
    fn builtin_validates() {
        Registry::builtin().validate().unwrap();
    }

    #[test]
    fn wrong_offset_is_caught() {
        let mut r = Registry::builtin();
        r.views[0].offset = 0;
        assert!(matches!(
            r.validate(),
            Err(SchemeError::OffsetMismatch { n: 0, .. })
        ));
    }

    #[test]
    fn lookups() {
        assert_eq!(value("jacobsthal", 5), BigInt::from(11));
        assert_eq!(value("narayana", 0), BigInt::from(1));
        assert_eq!(value("mnacci(3)", 0), BigInt::from(1));
        assert_eq!(value("fibonacci", 7), BigInt::from(13));
        assert_eq!(value("fibonacci", 0), BigInt::from(0));
        assert_eq!(value("F", -1), BigInt::from(0));
        assert_eq!(value("tribonacci", 2), BigInt::from(1));
        assert_eq!(value("mnacci7", 7), BigInt::from(64));
        assert_eq!(value("mnacci(1)", 9), BigInt::from(1));
        // 0, 1, 3, 11, 39 for S_n = 3 S_{n-1} + 2 S_{n-2}
        assert_eq!(value("horadam_3_2", 4), BigInt::from(39));
        assert_eq!(value("horadam_1_1", 10), value("fibonacci", 10));
    }

    #[test]
    fn offsets() {
        let r = registry();
        let offsets: Vec<(&str, i64)> = r.views().iter().map(|v| (v.name(), v.offset())).collect();
        for (name, o) in [
            ("fibonacci", -1),
            ("pell", -1),
            ("jacobsthal", -1),
            ("narayana", 0),
            ("padovan", -3),
            ("tribonacci", -2),
            ("tetranacci", -3),
            ("mnacci(4)", 0),
            ("fh-affine", 0),
        ] {
            assert!(offsets.contains(&(name, o)), "{name}");
        }
    }

    #[test]
    fn unknown_names() {
        for bad in ["lucas", "mnacci", "mnacci()", "mnacci(x)", "mnacci(0)", "fib", "horadam_1", "horadam__2", "horadam_1_-2"] {
            assert_eq!(
                registry().lookup(bad).unwrap_err(),
                SchemeError::NotFound(bad.to_string())
            );
        }
    }

    #[test]
    fn padovan_zero_extension() {
        // classical P_0 = 1, but the view reads S_{-3} = 0
        assert_eq!(value("padovan", 0), BigInt::from(0));
        assert_eq!(value("padovan", 3), BigInt::from(1));
    }
}
