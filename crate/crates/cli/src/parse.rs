//! Surface syntax for polynomial arguments.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT | INT '/' INT | 'i' | VAR | '(' expr ')'
//! ```
//!
//! A rational literal `p/q` is a single token, so `3/2*x1` reads as
//! `(3/2)*x1`. Exponents are non-negative integer literals.

use std::fmt;
use std::sync::Arc;

use kstar::{Poly, Scalar, VarTable};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A non-negative real literal.
    Num(Scalar),
    /// The imaginary unit `i`.
    Imag,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected one of: {}; found {found}", expected.join(", "))]
    Unexpected { expected: Vec<&'static str>, found: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed rational literal `{0}`")]
    MalformedRational(String),
    #[error("negative exponent: exponents must be non-negative integer literals")]
    NegativeExponent,
    #[error("exponent `{0}` is not a non-negative integer literal")]
    BadExponent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) | Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        let err = |kind| ParseError { line: l0, column: c0, kind };
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let start = k;
        let tok = if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            if k < chars.len() && chars[k] == '/' {
                k += 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
            }
            let lit: String = chars[start..k].iter().collect();
            if lit.ends_with('/') {
                return Err(err(ParseErrorKind::MalformedRational(lit)));
            }
            Tok::Num(lit)
        } else if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            Tok::Ident(chars[start..k].iter().collect())
        } else {
            k += 1;
            match c {
                '+' => Tok::Plus,
                '-' | '\u{2212}' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(err(ParseErrorKind::Unexpected {
                        expected: vec!["an operator", "a literal", "a variable"],
                        found: format!("`{c}`"),
                    }))
                }
            }
        };
        column += k - start;
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

const OPERAND: [&str; 5] = ["a number", "a variable", "`i`", "`(`", "`-`"];

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    table: Option<&'a VarTable>,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(at: &Spanned, kind: ParseErrorKind) -> ParseError {
        ParseError { line: at.line, column: at.column, kind }
    }

    fn unexpected(at: &Spanned, expected: &[&'static str]) -> ParseError {
        Self::error(at, ParseErrorKind::Unexpected { expected: expected.to_vec(), found: at.tok.to_string() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        match &at.tok {
            Tok::Num(s) if !s.contains('/') => match s.parse::<u32>() {
                Ok(n) => Ok(Expr::Pow(Box::new(base), n)),
                Err(_) => Err(Self::error(&at, ParseErrorKind::BadExponent(s.clone()))),
            },
            Tok::Num(s) => Err(Self::error(&at, ParseErrorKind::BadExponent(s.clone()))),
            Tok::Minus => Err(Self::error(&at, ParseErrorKind::NegativeExponent)),
            _ => Err(Self::unexpected(&at, &["a non-negative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.bump();
        match &at.tok {
            Tok::Num(s) => s
                .parse::<Scalar>()
                .map(Expr::Num)
                .map_err(|_| Self::error(&at, ParseErrorKind::MalformedRational(s.clone()))),
            Tok::Ident(s) if s == "i" => Ok(Expr::Imag),
            Tok::Ident(s) => {
                if let Some(t) = self.table {
                    if t.lookup(s).is_err() {
                        return Err(Self::error(&at, ParseErrorKind::UnknownVariable(s.clone())));
                    }
                }
                Ok(Expr::Var(s.clone()))
            }
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(Self::unexpected(&close, &["`)`", "an operator"]));
                }
                Ok(e)
            }
            _ => Err(Self::unexpected(&at, &OPERAND)),
        }
    }
}

fn run(text: &str, table: Option<&VarTable>) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, table };
    let e = p.expr()?;
    let rest = p.peek();
    if rest.tok != Tok::End {
        let expected: &[&str] = if matches!(rest.tok, Tok::Num(_) | Tok::Ident(_) | Tok::LParen) {
            &["an operator (`+`, `-`, `*`, `^`)", "end of input"]
        } else {
            &["an operator", "end of input"]
        };
        return Err(Parser::unexpected(rest, expected));
    }
    Ok(e)
}

/// Parses without checking variable names.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    run(text, None)
}

/// Parses and evaluates over `table`; unknown variables are reported with
/// their position.
pub fn parse_poly(text: &str, table: &Arc<VarTable>) -> Result<Poly, ParseError> {
    let e = run(text, Some(table))?;
    Ok(e.to_poly(table).expect("variables were checked while parsing"))
}

impl Expr {
    pub fn to_poly(&self, table: &Arc<VarTable>) -> kstar::Result<Poly> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(table, c.clone()),
            Expr::Imag => Poly::constant(table, Scalar::i()),
            Expr::Var(name) => Poly::var(table, table.lookup(name)?),
            Expr::Neg(a) => -&a.to_poly(table)?,
            Expr::Add(a, b) => &a.to_poly(table)? + &b.to_poly(table)?,
            Expr::Sub(a, b) => &a.to_poly(table)? - &b.to_poly(table)?,
            Expr::Mul(a, b) => &a.to_poly(table)? * &b.to_poly(table)?,
            Expr::Pow(a, n) => a.to_poly(table)?.pow(*n),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(c) if !c.re().is_integer() => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(c) => write!(f, "{c}"),
            Expr::Imag => write!(f, "i"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.fmt_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
            Expr::Pow(a, n) => {
                a.fmt_at(f, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl fmt::Display for Expr {
    /// Prints with the fewest parentheses that parse back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: usize) -> Arc<VarTable> {
        VarTable::spacetime(d).unwrap()
    }

    #[test]
    fn precedence() {
        let table = t(2);
        let p = parse_poly("x0^2*x1 + 3/2*x2", &table).unwrap();
        let x = |k| Poly::var(&table, table.x(k));
        let expect = &(&x(0).pow(2) * &x(1)) + &x(2).scale(&Scalar::ratio(3, 2));
        assert_eq!(p, expect);
        assert_eq!(parse_poly("-x1^2", &table).unwrap(), -&x(1).pow(2));
        assert_eq!(parse_poly("2*(x1 - x2)", &table).unwrap(), &x(1).scale(&2.into()) - &x(2).scale(&2.into()));
    }

    #[test]
    fn gaussian_cancellation() {
        assert!(parse_poly("i*x1 - i*x1", &t(1)).unwrap().is_zero());
        assert_eq!(parse_poly("i*i", &t(1)).unwrap(), Poly::constant(&t(1), Scalar::from_int(-1)));
    }

    #[test]
    fn phase_space_variables() {
        let p = VarTable::phase(2).unwrap();
        let e = parse_poly("zb1*z1 + zb2*z2", &p).unwrap();
        assert_eq!(e.num_terms(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x1 +\n  y7", &t(1)).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("y7".into()));

        let e = parse_expr("x1^-2").unwrap_err();
        assert_eq!((e.column, e.kind), (4, ParseErrorKind::NegativeExponent));

        let e = parse_expr("3/ x1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedRational("3/".into()));

        let e = parse_expr("1/0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedRational("1/0".into()));

        let e = parse_expr("x1 x2").unwrap_err();
        assert_eq!(e.column, 4);
        assert!(e.to_string().contains("an operator"), "{e}");

        let e = parse_expr("(x1 + x2").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Unexpected { .. }));
        assert!(parse_expr("x1^1/2").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for s in ["-(x1 + x2)*x0", "x1 - (x2 - x0)", "(3/2)^2*x1", "-x1^2", "(-x1)^2", "x0*-x1", "(1/2 + i)*x1"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{s} printed as {e}");
        }
    }
}
