//! Recursive-descent parser for expressions in `x`, `t` and operators in `D`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" nonneg-integer)?
//! atom   := "x" | "t" | "D" | integer | "(" expr ")"
//! ```
//!
//! `D` is accepted only by [`parse_operator`], where it commutes textually with
//! the coefficients: the parser collects a polynomial in `D` and the result is
//! read as `Σ a_i ∂^i`.

use std::fmt;

use hyperdiff_core::field::Ring;
use hyperdiff_core::{FieldElem, OreOperator, ParamScalar};
use num_bigint::BigInt;

/// A parse failure at a 1-based character column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(char),
    Op(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let col = i + 1;
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().unwrap()), col));
        } else if matches!(ch, 'x' | 't' | 'D') {
            out.push((Tok::Ident(ch), col));
            i += 1;
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Op(ch), col));
            i += 1;
        } else {
            return Err(ParseError { column: col, message: format!("unexpected character '{ch}'") });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Commutative polynomial in `D` with coefficients in `K`, lowest power first.
#[derive(Clone, Debug)]
struct DPoly(Vec<FieldElem>);

impl DPoly {
    fn constant(c: FieldElem) -> Self {
        DPoly(vec![c])
    }

    fn d() -> Self {
        DPoly(vec![FieldElem::zero(), FieldElem::one()])
    }

    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn as_scalar(&self) -> Option<&FieldElem> {
        (self.0.len() == 1).then(|| &self.0[0])
    }

    fn add(&self, rhs: &Self, sign: i64) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let s = FieldElem::from_int(sign);
        let get = |v: &Vec<FieldElem>, i: usize| v.get(i).cloned().unwrap_or_else(FieldElem::zero);
        DPoly((0..n).map(|i| &get(&self.0, i) + &(&s * &get(&rhs.0, i))).collect()).trim()
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![FieldElem::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        DPoly(out).trim()
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    allow_d: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.column(), message: message.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<DPoly, ParseError> {
        let mut acc = self.term()?;
        while let Tok::Op(op @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = acc.add(&rhs, if op == '+' { 1 } else { -1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<DPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Tok::Op(op @ ('*' | '/')) = *self.peek() {
            let col = self.column();
            self.bump();
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc.mul(&rhs);
                continue;
            }
            let Some(den) = rhs.as_scalar() else {
                return Err(ParseError { column: col, message: "cannot divide by an expression in D".into() });
            };
            let Ok(inv) = den.invert() else {
                return Err(ParseError { column: col, message: "division by zero".into() });
            };
            acc = acc.mul(&DPoly::constant(inv));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<DPoly, ParseError> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            let inner = self.unary()?;
            return Ok(DPoly::constant(FieldElem::zero()).add(&inner, -1));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<DPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let e = match self.peek().clone() {
            Tok::Int(n) => n,
            Tok::Op('-') => return self.error("negative exponents are not allowed; write 1/x instead of x^-1"),
            _ => return self.error("expected a non-negative integer exponent"),
        };
        let Ok(e) = u32::try_from(&e) else {
            return self.error("exponent too large");
        };
        self.bump();
        let mut acc = DPoly::constant(FieldElem::one());
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<DPoly, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(DPoly::constant(FieldElem::from_param(&ParamScalar::from_bigint(&n))))
            }
            Tok::Ident('x') => {
                self.bump();
                Ok(DPoly::constant(FieldElem::x()))
            }
            Tok::Ident('t') => {
                self.bump();
                Ok(DPoly::constant(FieldElem::t()))
            }
            Tok::Ident(_) if self.allow_d => {
                self.bump();
                Ok(DPoly::d())
            }
            Tok::Ident(_) => self.error("'D' is only allowed in operators"),
            Tok::Op('(') => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return self.error("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => self.error("unexpected end of input"),
            Tok::Op(c) => self.error(format!("unexpected '{c}'")),
        }
    }
}

fn run(src: &str, allow_d: bool) -> Result<DPoly, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, allow_d };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(v)
}

/// Parses an element of `Q(t)(x)`.
pub fn parse_expr(src: &str) -> Result<FieldElem, ParseError> {
    let v = run(src, false)?;
    Ok(v.0.into_iter().next().unwrap())
}

/// Parses an operator written as a polynomial in `D` with coefficients in `Q(t)(x)`.
pub fn parse_operator(src: &str) -> Result<OreOperator, ParseError> {
    Ok(OreOperator::new(run(src, true)?.0))
}
