//! Exact evaluation of identities and exhaustive sweeps over variable ranges.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::ast::{Expr, Factor, IdentityAst};
use crate::error::VerifyError;
use crate::registry::{ClassicView, Registry};
use crate::sequence::{SequenceSpec, TermValue};

/// At most this many counterexamples are kept per report.
pub const COUNTEREXAMPLE_CAP: usize = 32;

/// Inclusive per-variable bounds, in sweep order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ranges(pub Vec<(char, i64, i64)>);

impl Ranges {
    pub fn single(var: char, lo: i64, hi: i64) -> Self {
        Ranges(vec![(var, lo, hi)])
    }

    pub fn square(vars: &[char], lo: i64, hi: i64) -> Self {
        Ranges(vars.iter().map(|&v| (v, lo, hi)).collect())
    }

    pub fn get(&self, var: char) -> Option<(i64, i64)> {
        self.0.iter().find(|r| r.0 == var).map(|r| (r.1, r.2))
    }

    /// Parses `n=1..20, k=0..5`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let (var, span) = part
                .split_once('=')
                .ok_or_else(|| format!("range `{part}` is not of the form var=lo..hi"))?;
            let var = var.trim();
            let mut chars = var.chars();
            let v = match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_alphabetic() => c,
                _ => return Err(format!("`{var}` is not a single-letter variable")),
            };
            let (lo, hi) = span
                .split_once("..")
                .ok_or_else(|| format!("range `{part}` is missing `..`"))?;
            let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in `{part}`"))?;
            let hi = hi.trim();
            let hi: i64 = hi
                .strip_prefix('=')
                .unwrap_or(hi)
                .trim()
                .parse()
                .map_err(|_| format!("bad upper bound in `{part}`"))?;
            if out.iter().any(|r: &(char, i64, i64)| r.0 == v) {
                return Err(format!("variable `{v}` given twice"));
            }
            out.push((v, lo, hi));
        }
        Ok(Ranges(out))
    }
}

impl fmt::Display for Ranges {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, lo, hi)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}={lo}..{hi}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub binding: Vec<(char, i64)>,
    #[serde(serialize_with = "as_string")]
    pub lhs: BigInt,
    #[serde(serialize_with = "as_string")]
    pub rhs: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub ranges: Ranges,
    pub status: Status,
    /// Number of bindings evaluated.
    pub checked: u64,
    /// Number of failing bindings, including those beyond the cap.
    pub failures: u64,
    /// The first failing bindings in sweep order, capped.
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub(crate) fn from_results<I>(name: String, ranges: Ranges, expected: u64, results: I) -> Self
    where
        I: IntoIterator<Item = Counterexample>,
    {
        let mut counterexamples = Vec::new();
        let mut failures = 0;
        for c in results {
            failures += 1;
            if counterexamples.len() < COUNTEREXAMPLE_CAP {
                counterexamples.push(c);
            }
        }
        let status = if failures == 0 { Status::Pass } else { Status::Fail };
        VerificationReport {
            name,
            ranges,
            status,
            checked: expected,
            failures,
            counterexamples,
        }
    }
}

/// Sequence names of an identity bound to registry views.
struct Resolved<'a> {
    views: HashMap<&'a str, ClassicView>,
}

impl<'a> Resolved<'a> {
    fn new(ast: &'a IdentityAst, registry: &Registry) -> Result<Self, VerifyError> {
        let mut views = HashMap::new();
        for name in ast.sequence_names() {
            let view = registry
                .lookup(name)
                .map_err(|_| VerifyError::Unresolved(name.to_string()))?;
            views.insert(name, view);
        }
        Ok(Resolved { views })
    }

    fn expr(&self, e: &Expr, binding: &[(char, i64)]) -> Result<BigInt, VerifyError> {
        let mut acc = BigInt::zero();
        for term in &e.terms {
            let mut prod = BigInt::one();
            for factor in &term.factors {
                let v = match factor {
                    Factor::Int(v) => v.clone(),
                    Factor::Group(inner) => self.expr(inner, binding)?,
                    Factor::Seq { name, index, power } => {
                        let i = index
                            .eval(|var| binding.iter().find(|b| b.0 == var).map(|b| b.1))
                            .ok_or_else(|| match index.variables().find(|v| !binding.iter().any(|b| b.0 == *v)) {
                                Some(v) => VerifyError::Unbound(v),
                                None => VerifyError::IndexOverflow(format!("{name}({index})")),
                            })?;
                        let view = &self.views[name.as_str()];
                        let value = view.value(i);
                        match *power {
                            0 => BigInt::one(),
                            1 => value,
                            p => num_traits::pow(value, p as usize),
                        }
                    }
                };
                prod *= v;
            }
            if term.negative {
                acc -= prod;
            } else {
                acc += prod;
            }
        }
        Ok(acc)
    }

    fn sides(&self, ast: &IdentityAst, binding: &[(char, i64)]) -> Result<(BigInt, BigInt), VerifyError> {
        Ok((self.expr(&ast.lhs, binding)?, self.expr(&ast.rhs, binding)?))
    }
}

/// Both sides of `ast` under `binding`.
pub fn evaluate(
    ast: &IdentityAst,
    binding: &[(char, i64)],
    registry: &Registry,
) -> Result<(TermValue, TermValue), VerifyError> {
    if let Some(v) = ast.variables.iter().find(|v| !binding.iter().any(|b| b.0 == **v)) {
        return Err(VerifyError::Unbound(*v));
    }
    Resolved::new(ast, registry)?.sides(ast, binding)
}

/// Sweeps the full Cartesian product of `ranges` (which must bind every
/// variable of `ast`). Work is spread over the current rayon pool; the
/// report does not depend on the pool size.
pub fn verify(ast: &IdentityAst, ranges: &Ranges, registry: &Registry) -> Result<VerificationReport, VerifyError> {
    let resolved = Resolved::new(ast, registry)?;
    let mut axes: Vec<(char, i64, i64)> = Vec::new();
    for &v in &ast.variables {
        let (lo, hi) = ranges.get(v).ok_or(VerifyError::Unbound(v))?;
        if lo > hi {
            return Err(VerifyError::EmptyRange { var: v, lo, hi });
        }
        axes.push((v, lo, hi));
    }
    let total: u64 = axes.iter().map(|&(_, lo, hi)| (hi - lo + 1) as u64).product();
    let results: Vec<Option<Counterexample>> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let binding = unflatten(&axes, flat);
            let (lhs, rhs) = resolved.sides(ast, &binding)?;
            Ok((lhs != rhs).then_some(Counterexample { binding, lhs, rhs }))
        })
        .collect::<Result<_, VerifyError>>()?;
    let used = Ranges(axes);
    Ok(VerificationReport::from_results(
        ast.name.clone(),
        used,
        total,
        results.into_iter().flatten(),
    ))
}

/// Mixed-radix decode with the first variable most significant, so flat
/// order is lexicographic order of bindings.
fn unflatten(axes: &[(char, i64, i64)], mut flat: u64) -> Vec<(char, i64)> {
    let mut out = vec![('\0', 0); axes.len()];
    for (slot, &(v, lo, hi)) in out.iter_mut().zip(axes).rev() {
        let width = (hi - lo + 1) as u64;
        *slot = (v, lo + (flat % width) as i64);
        flat /= width;
    }
    out
}

/// Both sides of the master convolution identity
/// `S_{n+k} = S_n S_k + sum_{i in T, i >= 2} a_i sum_{j=1}^{i-1} S_{n-j} S_{k-i+j}`,
/// with `i` truncated at `n + k` (larger tiles contribute zero).
pub fn master_sides(spec: &SequenceSpec, n: i64, k: i64) -> (TermValue, TermValue) {
    let lhs = spec.term(n + k);
    let mut rhs = spec.term(n) * spec.term(k);
    let scheme = spec.scheme();
    for i in scheme.support_up_to((n + k).max(0) as usize) {
        if i < 2 {
            continue;
        }
        let i = i as i64;
        let mut inner = BigInt::zero();
        for j in 1..i {
            inner += spec.term(n - j) * spec.term(k - i + j);
        }
        rhs += inner * scheme.coeff(i as usize);
    }
    (lhs, rhs)
}

pub fn verify_master(spec: &SequenceSpec, n: i64, k: i64) -> bool {
    let (lhs, rhs) = master_sides(spec, n, k);
    lhs == rhs
}

/// Checks `F_2 + F_4 + ... + F_{2n} = F_{2n+1} - 1` for `1 <= n <= n_max`.
pub fn verify_partial_sum(n_max: i64, registry: &Registry) -> VerificationReport {
    let fib = registry.lookup("fibonacci").expect("fibonacci is built in");
    let mut running = BigInt::zero();
    let mut failures = Vec::new();
    for n in 1..=n_max {
        running += fib.value(2 * n);
        let rhs = fib.value(2 * n + 1) - 1;
        if running != rhs {
            failures.push(Counterexample {
                binding: vec![('n', n)],
                lhs: running.clone(),
                rhs,
            });
        }
    }
    VerificationReport::from_results(
        "sum_{j=1}^{n} F(2*j) = F(2*n+1) - 1".into(),
        Ranges::single('n', 1, n_max),
        n_max.max(0) as u64,
        failures,
    )
}
