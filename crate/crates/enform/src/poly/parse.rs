//! Recursive-descent parser for polynomial equations.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! equation := expr '=' expr
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ['^' nat]
//! atom     := nat | 'x' nat | '(' expr ')'
//! ```
//!
//! Variables are `x1 ... xp`; the number of variables of the result is the
//! largest index that occurs (at least 1). The unicode minus `−` and middle
//! dot `·` are accepted as synonyms for `-` and `*`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyEquation, PolyError, Polynomial};

pub fn parse_equation(text: &str) -> Result<PolyEquation, PolyError> {
    let sides: Vec<&str> = text.split('=').collect();
    if sides.len() != 2 {
        return Err(PolyError::MissingEquals);
    }
    let lhs_raw = parse_expr_str(sides[0], 0)?;
    let rhs_raw = parse_expr_str(sides[1], sides[0].len() + 1)?;
    let p = max_var(&lhs_raw).max(max_var(&rhs_raw)).max(1);
    Ok(PolyEquation::new(realize(&lhs_raw, p), realize(&rhs_raw, p)))
}

/// Parse a single polynomial (no `=`).
pub fn parse_polynomial(text: &str) -> Result<Polynomial, PolyError> {
    if text.contains('=') {
        return Err(PolyError::Syntax {
            pos: text.find('=').unwrap(),
            msg: "unexpected '=' in polynomial".into(),
        });
    }
    let raw = parse_expr_str(text, 0)?;
    let p = max_var(&raw).max(1);
    Ok(realize(&raw, p))
}

/// Intermediate form: terms keyed by sparse (var -> exponent) maps, so the
/// final variable count can be decided after the whole text is read.
type RawPoly = Vec<(std::collections::BTreeMap<usize, u32>, BigInt)>;

fn max_var(raw: &RawPoly) -> usize {
    raw.iter()
        .flat_map(|(m, _)| m.keys().copied())
        .max()
        .unwrap_or(0)
}

fn realize(raw: &RawPoly, num_vars: usize) -> Polynomial {
    Polynomial::from_terms(
        num_vars,
        raw.iter().map(|(m, c)| {
            let mut exps = vec![0u32; num_vars];
            for (&v, &e) in m {
                exps[v - 1] += e;
            }
            (exps, c.clone())
        }),
    )
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
    offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, offset: usize) -> Self {
        Lexer {
            bytes: text.as_bytes(),
            pos: 0,
            offset,
        }
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.offset + self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_unicode(&self) -> Option<(char, usize)> {
        std::str::from_utf8(&self.bytes[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .map(|c| (c, c.len_utf8()))
    }

    fn next_tok(&mut self) -> Result<Tok, PolyError> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(Tok::End);
        }
        let b = self.bytes[self.pos];
        match b {
            b'+' => {
                self.pos += 1;
                Ok(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                Ok(Tok::Star)
            }
            b'^' => {
                self.pos += 1;
                Ok(Tok::Caret)
            }
            b'(' => {
                self.pos += 1;
                Ok(Tok::LParen)
            }
            b')' => {
                self.pos += 1;
                Ok(Tok::RParen)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                Ok(Tok::Num(s.parse().unwrap()))
            }
            b'x' | b'X' => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.err("variable needs an index, e.g. x1"));
                }
                let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let idx: usize = s.parse().map_err(|_| self.err("variable index too large"))?;
                if idx == 0 {
                    return Err(self.err("variable indices start at 1"));
                }
                Ok(Tok::Var(idx))
            }
            _ => {
                // Unicode synonyms for minus and times.
                if let Some((c, len)) = self.peek_unicode() {
                    if c == '\u{2212}' {
                        self.pos += len;
                        return Ok(Tok::Minus);
                    }
                    if c == '\u{00b7}' || c == '\u{22c5}' {
                        self.pos += len;
                        return Ok(Tok::Star);
                    }
                }
                Err(self.err("unexpected character"))
            }
        }
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    cur: Tok,
    cur_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, offset: usize) -> Result<Self, PolyError> {
        let mut lex = Lexer::new(text, offset);
        let cur_pos = lex.offset + lex.pos;
        let cur = lex.next_tok()?;
        Ok(Parser { lex, cur, cur_pos })
    }

    fn bump(&mut self) -> Result<(), PolyError> {
        self.cur_pos = self.lex.offset + self.lex.pos;
        self.cur = self.lex.next_tok()?;
        Ok(())
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.cur_pos,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<RawPoly, PolyError> {
        let mut negate = false;
        if self.cur == Tok::Minus {
            negate = true;
            self.bump()?;
        } else if self.cur == Tok::Plus {
            self.bump()?;
        }
        let mut acc = self.term()?;
        if negate {
            for (_, c) in acc.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        loop {
            let minus = match self.cur {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump()?;
            let mut t = self.term()?;
            if minus {
                for (_, c) in t.iter_mut() {
                    *c = -std::mem::take(c);
                }
            }
            acc.extend(t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RawPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.cur == Tok::Star {
            self.bump()?;
            let f = self.factor()?;
            acc = raw_mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly, PolyError> {
        let base = self.atom()?;
        if self.cur == Tok::Caret {
            self.bump()?;
            let exp_pos = self.cur_pos;
            match std::mem::replace(&mut self.cur, Tok::End) {
                Tok::Num(n) => {
                    self.bump()?;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| PolyError::BadExponent { pos: exp_pos })?;
                    return Ok(raw_pow(&base, e));
                }
                Tok::Minus => return Err(PolyError::BadExponent { pos: exp_pos }),
                other => {
                    self.cur = other;
                    return Err(PolyError::BadExponent { pos: exp_pos });
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RawPoly, PolyError> {
        match std::mem::replace(&mut self.cur, Tok::End) {
            Tok::Num(n) => {
                self.bump()?;
                Ok(vec![(Default::default(), n)])
            }
            Tok::Var(idx) => {
                self.bump()?;
                let mut m = std::collections::BTreeMap::new();
                m.insert(idx, 1u32);
                Ok(vec![(m, BigInt::from(1))])
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.cur != Tok::RParen {
                    return Err(self.err("expected ')'"));
                }
                self.bump()?;
                Ok(inner)
            }
            other => {
                self.cur = other;
                Err(self.err("expected a number, variable, or '('"))
            }
        }
    }
}

fn raw_mul(a: &RawPoly, b: &RawPoly) -> RawPoly {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            for (&v, &e) in mb {
                *m.entry(v).or_insert(0) += e;
            }
            out.push((m, ca * cb));
        }
    }
    out
}

fn raw_pow(a: &RawPoly, e: u32) -> RawPoly {
    let mut acc: RawPoly = vec![(Default::default(), BigInt::from(1))];
    for _ in 0..e {
        acc = raw_mul(&acc, a);
    }
    acc
}

fn parse_expr_str(text: &str, offset: usize) -> Result<RawPoly, PolyError> {
    if text.trim().is_empty() {
        return Err(PolyError::Syntax {
            pos: offset,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser::new(text, offset)?;
    let raw = p.expr()?;
    if p.cur != Tok::End {
        return Err(p.err("trailing input"));
    }
    // Drop exact cancellations early so max_var only sees surviving terms.
    Ok(raw.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_worked_example() {
        let eq = parse_equation("x1^5 - x1 = x2^2 - x2").unwrap();
        assert_eq!(eq.num_vars(), 2);
        assert_eq!(eq.normalized.to_string(), "x1^5 - x2^2 - x1 + x2");
    }

    #[test]
    fn identity_normalizes_to_zero() {
        let eq = parse_equation("x1 = x1").unwrap();
        assert!(eq.normalized.is_zero());
        assert_eq!(eq.num_vars(), 1);
    }

    #[test]
    fn linear_equation() {
        let eq = parse_equation("2*x1 + 3 = 0").unwrap();
        assert_eq!(eq.normalized.to_string(), "2*x1 + 3");
    }

    #[test]
    fn missing_equals_rejected() {
        assert_eq!(parse_equation("x1 + 1").unwrap_err(), PolyError::MissingEquals);
        assert_eq!(parse_equation("x1 = 1 = 2").unwrap_err(), PolyError::MissingEquals);
    }

    #[test]
    fn negative_exponent_rejected() {
        match parse_equation("x1^-2 = 0").unwrap_err() {
            PolyError::BadExponent { .. } => {}
            e => panic!("wrong error {e:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        match parse_equation("x1 + ? = 0").unwrap_err() {
            PolyError::Syntax { pos, .. } => assert_eq!(pos, 5),
            e => panic!("wrong error {e:?}"),
        }
    }

    #[test]
    fn position_counts_across_equals_sign() {
        match parse_equation("x1 = x2 + ?").unwrap_err() {
            PolyError::Syntax { pos, .. } => assert_eq!(pos, 10),
            e => panic!("wrong error {e:?}"),
        }
    }

    #[test]
    fn parentheses_and_unary_minus() {
        let eq = parse_equation("-(x1 - 2)^2 = x2").unwrap();
        assert_eq!(eq.normalized.to_string(), "-x1^2 + 4*x1 - x2 - 4");
    }

    #[test]
    fn unicode_operators_accepted() {
        let eq = parse_equation("x1\u{2212}1 = x2\u{00b7}x2").unwrap();
        assert_eq!(eq.normalized.to_string(), "-x2^2 + x1 - 1");
    }

    #[test]
    fn print_parse_fixed_point() {
        for text in [
            "x1^5 - x1 = x2^2 - x2",
            "2*x1 + 3 = 0",
            "(x1 + x2)^3 = 7*x3",
            "x1*x2*x3 - 4 = x1^2",
        ] {
            let eq = parse_equation(text).unwrap();
            let printed = eq.normalized.to_string();
            let reparsed = parse_polynomial(&printed).unwrap();
            let reparsed = reparsed.extend_vars(eq.normalized.num_vars());
            assert_eq!(reparsed, eq.normalized, "not a fixed point: {printed}");
            assert_eq!(reparsed.to_string(), printed);
        }
    }
}
