//! Identities over registry sequences: a small expression language, exact
//! evaluation, exhaustive verification, and the built-in corpus.

mod ast;
mod corpus;
mod parser;
mod verify;

pub use ast::{Expr, Factor, IdentityAst, IndexExpr, Term};
pub use corpus::{builtin_corpus, builtin_corpus_source, parse_corpus, CorpusEntry, Expectation};
pub use parser::parse_identity;
pub use verify::{
    evaluate, master_sides, verify, verify_master, verify_partial_sum, Counterexample, Ranges,
    Status, VerificationReport, COUNTEREXAMPLE_CAP,
};
