//! Terms, tilings and identities for full-history linear recurrences with
//! non-negative constant coefficients.
//!
//! A [`CoefficientScheme`] assigns to every tile length `k` a color count
//! `a_k`. The sequence it defines is `S_0 = 1`, `S_j = 0` for `j < 0`, and
//! `S_n = a_1 S_{n-1} + a_2 S_{n-2} + ... + a_n S_0`, which counts colored
//! tilings of a `1 x n` board. The crate computes terms exactly, enumerates
//! tilings as an independent oracle, and verifies convolution identities
//! written in a small expression language.

pub mod bijection;
pub mod census;
pub mod error;
pub mod identity;
mod matrix;
pub mod registry;
pub mod scheme;
pub mod sequence;
pub mod tiling;

pub use bijection::{
    require_mnacci, shift_forward, shift_inverse, BijectionCertificate, Tagged,
};
pub use census::{breakability_census, BreakabilityCensus, CensusRow};
pub use error::{ParseError, SchemeError, TilingError, VerifyError};
pub use identity::{
    builtin_corpus, evaluate, master_sides, parse_corpus, parse_identity, verify, verify_master,
    verify_partial_sum, CorpusEntry, Expectation, IdentityAst, Ranges, Status, VerificationReport,
};
pub use registry::{registry, ClassicView, Registry};
pub use scheme::{CoefficientScheme, FullHistoryRule, SchemeDescriptor};
pub use sequence::{SequenceSpec, Strategy, TermValue};
pub use tiling::{
    check_budget, count_tilings, enumerate_tilings, for_each_tiling, is_breakable, Tile, Tiling,
    DEFAULT_BUDGET,
};
