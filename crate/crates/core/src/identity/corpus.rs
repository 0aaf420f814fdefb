//! Line-oriented identity corpus files:
//!
//! ```text
//! # comment
//! name | identity | n=1..20, k=1..20 | expect=pass | cite=free text
//! ```

use super::ast::IdentityAst;
use super::parser::parse_identity;
use super::verify::Ranges;
use crate::error::ParseError;

const BUILTIN: &str = include_str!("../../corpus/builtin.corpus");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub ast: IdentityAst,
    /// The identity as written in the corpus.
    pub text: String,
    pub ranges: Ranges,
    pub expect: Expectation,
    pub cite: String,
    /// 1-based line in the source file.
    pub line: usize,
}

impl CorpusEntry {
    pub fn name(&self) -> &str {
        &self.ast.name
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, ParseError> {
    let mut out: Vec<CorpusEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let err = |message: String| ParseError::Corpus { line, message };
        let fields: Vec<&str> = content.splitn(5, '|').map(str::trim).collect();
        let [name, identity, ranges, expect, cite] = fields[..] else {
            return Err(err(format!("expected 5 `|`-separated fields, found {}", fields.len())));
        };
        if name.is_empty() {
            return Err(err("empty name".into()));
        }
        if out.iter().any(|e| e.name() == name) {
            return Err(err(format!("duplicate entry `{name}`")));
        }
        let mut ast = parse_identity(identity).map_err(|e| err(e.to_string()))?;
        ast.name = name.to_string();
        let ranges = Ranges::parse(ranges).map_err(err)?;
        if let Some(v) = ast.variables.iter().find(|v| ranges.get(**v).is_none()) {
            return Err(err(format!("no range for variable `{v}`")));
        }
        let expect = match expect.strip_prefix("expect=").map(str::trim) {
            Some("pass") => Expectation::Pass,
            Some("fail") => Expectation::Fail,
            _ => return Err(err(format!("expected `expect=pass|fail`, found `{expect}`"))),
        };
        let cite = cite
            .strip_prefix("cite=")
            .ok_or_else(|| err(format!("expected `cite=...`, found `{cite}`")))?
            .trim()
            .to_string();
        out.push(CorpusEntry {
            ast,
            text: identity.to_string(),
            ranges,
            expect,
            cite,
            line,
        });
    }
    Ok(out)
}

/// The identities shipped with the crate, each with its recommended ranges.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUILTIN).expect("built-in corpus parses")
}

/// Source text of the built-in corpus.
pub fn builtin_corpus_source() -> &'static str {
    BUILTIN
}
