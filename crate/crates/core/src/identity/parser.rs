//! Recursive-descent parser for identities.
//!
//! ```text
//! identity  := expr "=" expr
//! expr      := ["-"] term (("+" | "-") term)*
//! term      := factor ("*" factor)*
//! factor    := seqref ["^" integer] | "(" expr ")" | integer
//! seqref    := NAME "(" index ")"
//! index     := ["-"] iterm (("+" | "-") iterm)*
//! iterm     := atom ("*" atom)*         at most one variable per iterm
//! atom      := integer | VARIABLE       variables are single letters
//! ```
//!
//! Whitespace is insignificant and `−` (U+2212) reads as `-`.

use num_bigint::BigInt;

use super::ast::{Expr, Factor, IdentityAst, IndexExpr, Term};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("name `{s}`"),
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eq => "`=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00b7}' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                }
                out.push((pos, Tok::Int(s)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                }
                out.push((pos, Tok::Ident(s)));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    offset: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn identity(&mut self) -> Result<(Expr, Expr), ParseError> {
        let lhs = self.expr()?;
        self.expect(Tok::Eq, "`=`")?;
        let rhs = self.expr()?;
        self.expect(Tok::End, "end of input")?;
        Ok((lhs, rhs))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut negative = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negative = true;
        }
        loop {
            terms.push(Term {
                negative,
                factors: self.term()?,
            });
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                _ => break,
            }
            self.bump();
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Vec<Factor>, ParseError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                Ok(Factor::Int(s.parse::<BigInt>().expect("lexer yields digits")))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Factor::Group(e))
            }
            Tok::Ident(name) => {
                self.bump();
                self.expect(Tok::LParen, "`(` after sequence name")?;
                let index = self.index()?;
                self.expect(Tok::RParen, "`)` closing the index")?;
                let mut power = 1;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let at = self.offset();
                    match self.bump() {
                        Tok::Int(s) => {
                            power = s.parse().map_err(|_| ParseError::Syntax {
                                offset: at,
                                message: format!("exponent `{s}` too large"),
                            })?;
                        }
                        _ => {
                            self.pos -= 1;
                            return self.error("non-negative integer exponent");
                        }
                    }
                }
                Ok(Factor::Seq { name, index, power })
            }
            _ => self.error("sequence reference, integer or `(`"),
        }
    }

    fn index(&mut self) -> Result<IndexExpr, ParseError> {
        let mut out = IndexExpr::constant(0);
        let mut sign = 1i64;
        if *self.peek() == Tok::Minus {
            self.bump();
            sign = -1;
        }
        loop {
            let start = self.offset();
            let (var, coeff) = self.index_term()?;
            let overflow = || ParseError::Syntax {
                offset: start,
                message: "index constant out of range".into(),
            };
            let coeff = coeff.checked_mul(sign).ok_or_else(overflow)?;
            match var {
                Some(v) => out.add_var(v, coeff).ok_or_else(overflow)?,
                None => out.constant = out.constant.checked_add(coeff).ok_or_else(overflow)?,
            }
            match self.peek() {
                Tok::Plus => sign = 1,
                Tok::Minus => sign = -1,
                _ => break,
            }
            self.bump();
        }
        Ok(out)
    }

    /// Product of atoms with at most one variable.
    fn index_term(&mut self) -> Result<(Option<char>, i64), ParseError> {
        let mut var = None;
        let mut coeff = 1i64;
        loop {
            let at = self.offset();
            match self.peek().clone() {
                Tok::Int(s) => {
                    self.bump();
                    let v: i64 = s.parse().map_err(|_| ParseError::Syntax {
                        offset: at,
                        message: format!("integer `{s}` out of range"),
                    })?;
                    coeff = coeff.checked_mul(v).ok_or_else(|| ParseError::Syntax {
                        offset: at,
                        message: "index constant out of range".into(),
                    })?;
                }
                Tok::Ident(name) => {
                    let mut chars = name.chars();
                    let (Some(c), None) = (chars.next(), chars.next()) else {
                        return self.error("single-letter variable in index");
                    };
                    if !c.is_ascii_alphabetic() {
                        return self.error("single-letter variable in index");
                    }
                    if self.toks[self.pos + 1].1 == Tok::LParen {
                        return self.error("variable (sequence references cannot nest)");
                    }
                    if let Some(prev) = var {
                        return Err(ParseError::NonLinearIndex {
                            offset: at,
                            message: format!("product of variables `{prev}` and `{c}`"),
                        });
                    }
                    self.bump();
                    var = Some(c);
                }
                Tok::LParen => {
                    return Err(ParseError::Syntax {
                        offset: at,
                        message: "parentheses are not allowed inside an index".into(),
                    })
                }
                _ => return self.error("integer or variable in index"),
            }
            if *self.peek() == Tok::Star {
                self.bump();
            } else {
                return Ok((var, coeff));
            }
        }
    }
}

/// Parses `lhs = rhs`. The identity's name defaults to the trimmed text.
pub fn parse_identity(text: &str) -> Result<IdentityAst, ParseError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let (lhs, rhs) = parser.identity()?;
    let mut variables = Vec::new();
    let mut collect = |_: &str, index: &IndexExpr| {
        for v in index.variables() {
            if !variables.contains(&v) {
                variables.push(v);
            }
        }
    };
    lhs.visit_seqrefs(&mut collect);
    rhs.visit_seqrefs(&mut collect);
    Ok(IdentityAst {
        name: text.trim().to_string(),
        variables,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(name: &str, index: IndexExpr, power: u32) -> Factor {
        Factor::Seq {
            name: name.into(),
            index,
            power,
        }
    }

    fn idx(coeffs: &[(char, i64)], constant: i64) -> IndexExpr {
        IndexExpr {
            coeffs: coeffs.to_vec(),
            constant,
        }
    }

    #[test]
    fn fibonacci_convolution() {
        let ast = parse_identity("F(n+k) = F(n+1)*F(k) + F(n)*F(k-1)").unwrap();
        assert_eq!(ast.variables, vec!['n', 'k']);
        assert_eq!(ast.lhs.terms.len(), 1);
        assert_eq!(ast.lhs.terms[0].factors, vec![seq("F", idx(&[('n', 1), ('k', 1)], 0), 1)]);
        assert_eq!(
            ast.rhs.terms[1].factors,
            vec![seq("F", idx(&[('n', 1)], 0), 1), seq("F", idx(&[('k', 1)], -1), 1)]
        );
    }

    #[test]
    fn tribonacci_doubling() {
        let ast = parse_identity("T(2*n) = T(n+1)^2 + T(n)^2 + 2*T(n)*T(n-1)").unwrap();
        assert_eq!(ast.variables, vec!['n']);
        assert_eq!(ast.lhs.terms[0].factors, vec![seq("T", idx(&[('n', 2)], 0), 1)]);
        assert_eq!(ast.rhs.terms[0].factors, vec![seq("T", idx(&[('n', 1)], 1), 2)]);
        assert_eq!(ast.rhs.terms[2].factors[0], Factor::Int(2.into()));
    }

    #[test]
    fn unbalanced() {
        assert_eq!(
            parse_identity("F(n+"),
            Err(ParseError::Syntax {
                offset: 4,
                message: "expected integer or variable in index, found end of input".into()
            })
        );
    }

    #[test]
    fn nonlinear_index() {
        let err = parse_identity("F(n*k) = F(n)").unwrap_err();
        assert!(matches!(err, ParseError::NonLinearIndex { offset: 4, .. }), "{err:?}");
    }

    #[test]
    fn index_forms() {
        let ast = parse_identity("F(-n + 3*k - 2 + n*2 - 0) = F(4*n) − F(n*1)").unwrap();
        assert_eq!(
            ast.lhs.terms[0].factors[0],
            seq("F", idx(&[('n', 1), ('k', 3)], -2), 1)
        );
        assert!(ast.rhs.terms[1].negative);
    }

    #[test]
    fn unary_minus_and_groups() {
        let ast = parse_identity("-F(n)^0 = -(1 - F(n))*3").unwrap();
        assert!(ast.lhs.terms[0].negative);
        assert_eq!(ast.lhs.terms[0].factors, vec![seq("F", idx(&[('n', 1)], 0), 0)]);
        assert!(matches!(ast.rhs.terms[0].factors[0], Factor::Group(_)));
    }

    #[test]
    fn rejections() {
        for bad in [
            "F(n) = ",
            "F(n) F(n) = 1",
            "F = 1",
            "F(n) = G(nk)",
            "F(F(n)) = 1",
            "F(2*(n+1)) = 1",
            "F(n)^x = 1",
            "F(n)^-1 = 1",
            "F(n) = 1 = 1",
            "F(n) # 1",
            "F(n)",
            "2n = 1",
        ] {
            assert!(parse_identity(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn round_trip() {
        for text in [
            "F(n+k) = F(n+1)*F(k) + F(n)*F(k-1)",
            "Q(n+k) = Q(n+2)*Q(k+1) + Q(n+1)*(Q(k+2)-Q(k+1)) + Q(n)*(Q(k-1)+Q(k)) + Q(n-1)*Q(k)",
            "-F(-n-1)^3 = 0*F(0*n) - (2 - F(7))",
        ] {
            let ast = parse_identity(text).unwrap();
            let again = parse_identity(&ast.to_string()).unwrap();
            assert_eq!(again.lhs, ast.lhs);
            assert_eq!(again.rhs, ast.rhs);
            assert_eq!(again.variables, ast.variables);
        }
    }
}
