use std::fmt;

use num_bigint::BigInt;

/// Integer-linear index `c_1 v_1 + ... + c_r v_r + constant`.
///
/// Like terms are merged and variables kept in order of first appearance.
/// A variable whose coefficients cancel stays with coefficient zero, so the
/// inferred variable set follows the source text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexExpr {
    pub coeffs: Vec<(char, i64)>,
    pub constant: i64,
}

impl IndexExpr {
    pub fn constant(c: i64) -> Self {
        IndexExpr {
            coeffs: Vec::new(),
            constant: c,
        }
    }

    pub(crate) fn add_var(&mut self, var: char, coeff: i64) -> Option<()> {
        match self.coeffs.iter_mut().find(|(v, _)| *v == var) {
            Some((_, c)) => *c = c.checked_add(coeff)?,
            None => self.coeffs.push((var, coeff)),
        }
        Some(())
    }

    pub fn variables(&self) -> impl Iterator<Item = char> + '_ {
        self.coeffs.iter().map(|(v, _)| *v)
    }

    /// Value under `lookup`, or `None` on overflow or an unbound variable.
    pub fn eval(&self, lookup: impl Fn(char) -> Option<i64>) -> Option<i64> {
        let mut acc = self.constant;
        for &(v, c) in &self.coeffs {
            acc = acc.checked_add(c.checked_mul(lookup(v)?)?)?;
        }
        Some(acc)
    }
}

impl fmt::Display for IndexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(v, c) in &self.coeffs {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{v}")?;
            } else {
                write!(f, "{sign}{mag}*{v}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant > 0 {
            write!(f, "+{}", self.constant)
        } else if self.constant < 0 {
            write!(f, "-{}", self.constant.unsigned_abs())
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `name(index)^power`.
    Seq {
        name: String,
        index: IndexExpr,
        power: u32,
    },
    Group(Expr),
    Int(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

/// Signed sum of products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub(crate) fn visit_seqrefs<'a>(&'a self, f: &mut impl FnMut(&'a str, &'a IndexExpr)) {
        for term in &self.terms {
            for factor in &term.factors {
                match factor {
                    Factor::Seq { name, index, .. } => f(name, index),
                    Factor::Group(e) => e.visit_seqrefs(f),
                    Factor::Int(_) => {}
                }
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Seq { name, index, power } => {
                write!(f, "{name}({index})")?;
                if *power != 1 {
                    write!(f, "^{power}")?;
                }
                Ok(())
            }
            Factor::Group(e) => write!(f, "({e})"),
            Factor::Int(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            match (i, term.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            for (j, factor) in term.factors.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{factor}")?;
            }
        }
        Ok(())
    }
}

/// A parsed identity `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdentityAst {
    pub name: String,
    /// Variables in order of first appearance.
    pub variables: Vec<char>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl IdentityAst {
    /// Distinct sequence names, in order of first appearance.
    pub fn sequence_names<'a>(&'a self) -> Vec<&'a str> {
        let mut names: Vec<&str> = Vec::new();
        let mut collect = |name: &'a str, _: &'a IndexExpr| {
            if !names.contains(&name) {
                names.push(name);
            }
        };
        self.lhs.visit_seqrefs(&mut collect);
        self.rhs.visit_seqrefs(&mut collect);
        names
    }
}

impl fmt::Display for IdentityAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
