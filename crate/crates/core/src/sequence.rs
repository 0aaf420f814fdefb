//! Exact term computation for a coefficient scheme under the convention
//! `S_0 = 1`, `S_j = 0` for `j < 0`.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::SchemeError;
use crate::matrix::Matrix;
use crate::scheme::CoefficientScheme;

/// Exact signed term value. Sequence terms are never negative; the sign is
/// there for identity arithmetic.
pub type TermValue = BigInt;

/// Memo tables stop growing past this many entries. Larger indices of finite
/// schemes are reached with a rolling window starting at the table's end.
const MEMO_LIMIT: usize = 4096;

/// Evaluation strategy for a single term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Forward iteration of the recurrence.
    Iter,
    /// Binary exponentiation of the companion matrix (finite schemes only).
    Matrix,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Iter => "iter",
            Strategy::Matrix => "matrix",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iter" => Ok(Strategy::Iter),
            "matrix" => Ok(Strategy::Matrix),
            other => Err(format!("unknown strategy `{other}` (expected iter or matrix)")),
        }
    }
}

/// A named scheme together with its append-only memo table.
///
/// The memo is behind a lock, so a single spec can be shared by reference
/// across verification workers.
pub struct SequenceSpec {
    name: String,
    scheme: CoefficientScheme,
    memo: RwLock<Vec<BigInt>>,
}

impl fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSpec")
            .field("name", &self.name)
            .field("scheme", &self.scheme)
            .finish()
    }
}

impl Clone for SequenceSpec {
    fn clone(&self) -> Self {
        let memo = self.memo.read().expect("memo lock poisoned").clone();
        SequenceSpec {
            name: self.name.clone(),
            scheme: self.scheme.clone(),
            memo: RwLock::new(memo),
        }
    }
}

impl SequenceSpec {
    pub fn new(name: impl Into<String>, scheme: CoefficientScheme) -> Self {
        SequenceSpec {
            name: name.into(),
            scheme,
            memo: RwLock::new(vec![BigInt::one()]),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scheme(&self) -> &CoefficientScheme {
        &self.scheme
    }

    /// `S_n` for any integer `n`, zero below the origin.
    pub fn term(&self, n: i64) -> TermValue {
        if n < 0 {
            return BigInt::zero();
        }
        let n = n as usize;
        if n < MEMO_LIMIT {
            if let Some(v) = self.memo.read().expect("memo lock poisoned").get(n) {
                return v.clone();
            }
            self.extend_memo(n);
            return self.memo.read().expect("memo lock poisoned")[n].clone();
        }
        self.extend_memo(MEMO_LIMIT - 1);
        let memo = self.memo.read().expect("memo lock poisoned");
        match self.scheme.order() {
            Some(m) => {
                let start = memo.len() - m.max(1);
                roll_finite(&self.scheme, memo[start..].to_vec(), memo.len(), n)
            }
            None => {
                let mut values = memo.clone();
                drop(memo);
                extend_values(&self.scheme, &mut values, n);
                values.swap_remove(n)
            }
        }
    }

    /// `S_n` by companion-matrix exponentiation, `O(m^3 log n)` big-integer
    /// multiplications.
    pub fn term_fast(&self, n: u64) -> Result<TermValue, SchemeError> {
        let coeffs = match &self.scheme {
            CoefficientScheme::Finite(c) => c,
            CoefficientScheme::FullHistory(_) => {
                return Err(SchemeError::UnsupportedStrategy(self.name.clone()))
            }
        };
        if coeffs.is_empty() {
            return Ok(if n == 0 { BigInt::one() } else { BigInt::zero() });
        }
        // The initial state (S_0, S_{-1}, ..., S_{1-m}) is the first unit
        // vector, so S_n is the top-left entry of M^n.
        let power = Matrix::companion(coeffs).pow(n);
        Ok(BigInt::from(power.get(0, 0).clone()))
    }

    pub fn term_with(&self, strategy: Strategy, n: i64) -> Result<TermValue, SchemeError> {
        match strategy {
            Strategy::Iter => Ok(self.term(n)),
            Strategy::Matrix if n < 0 => {
                self.term_fast(0)?;
                Ok(BigInt::zero())
            }
            Strategy::Matrix => self.term_fast(n as u64),
        }
    }

    /// Forward iteration that bypasses and does not populate the memo table.
    pub fn term_uncached(&self, n: u64) -> TermValue {
        let n = n as usize;
        match self.scheme.order() {
            Some(m) => roll_finite(&self.scheme, initial_window(m), 1, n),
            None => {
                let mut values = vec![BigInt::one()];
                extend_values(&self.scheme, &mut values, n);
                values.swap_remove(n)
            }
        }
    }

    fn extend_memo(&self, n: usize) {
        let mut memo = self.memo.write().expect("memo lock poisoned");
        extend_values(&self.scheme, &mut memo, n);
    }
}

fn next_value(scheme: &CoefficientScheme, values: &[BigInt]) -> BigInt {
    let len = values.len();
    let mut acc = BigInt::zero();
    for k in 1..=scheme.max_tile(len) {
        let a = scheme.coeff(k);
        match a {
            0 => {}
            1 => acc += &values[len - k],
            _ => acc += &values[len - k] * a,
        }
    }
    acc
}

fn extend_values(scheme: &CoefficientScheme, values: &mut Vec<BigInt>, n: usize) {
    while values.len() <= n {
        let v = next_value(scheme, values);
        values.push(v);
    }
}

/// Window `(S_{1-m}, ..., S_0)` preceding index 1.
fn initial_window(m: usize) -> Vec<BigInt> {
    let mut w = vec![BigInt::zero(); m.max(1)];
    *w.last_mut().expect("non-empty window") = BigInt::one();
    w
}

/// Advances a finite recurrence from the window ending at index `next - 1`
/// until index `n`, keeping only the last `m` values.
fn roll_finite(scheme: &CoefficientScheme, mut window: Vec<BigInt>, next: usize, n: usize) -> BigInt {
    if n < next {
        let back = next - 1 - n;
        return window[window.len() - 1 - back].clone();
    }
    let m = window.len();
    for _ in next..=n {
        let mut acc = BigInt::zero();
        for k in 1..=m {
            let a = scheme.coeff(k);
            match a {
                0 => {}
                1 => acc += &window[m - k],
                _ => acc += &window[m - k] * a,
            }
        }
        window.rotate_left(1);
        window[m - 1] = acc;
    }
    window.pop().expect("non-empty window")
}
