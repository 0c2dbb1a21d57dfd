//! Arithmetic expressions over duplexes.
//!
//! Grammar, loosest first:
//! ```text
//! sum     = product (("+" | "-") product)*
//! product = unary (("*" | "/") unary)*
//! unary   = "-" unary | atom
//! atom    = literal | constant | call | "(" sum ")"
//! call    = ("abs" | "inv" | "neg") "(" sum ")"
//!         | ("max" | "min") "(" sum "," sum ")"
//!         | "sqrt" "(" literal ")"
//! ```
//! A literal is an integer, a decimal such as `1.414` (read exactly), or a
//! fraction `p/q` written without spaces. Constants are `pi`, `e`, `sqrt2`
//! and `zeta3`.

use std::fmt;

use duplex::{const_e, const_pi, const_sqrt, const_zeta3, Apartness, Duplex, Rational};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
    Sqrt2,
    Zeta3,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
            Constant::Sqrt2 => "sqrt2",
            Constant::Zeta3 => "zeta3",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "pi" => Some(Constant::Pi),
            "e" => Some(Constant::E),
            "sqrt2" => Some(Constant::Sqrt2),
            "zeta3" => Some(Constant::Zeta3),
            _ => None,
        }
    }

    pub fn duplex(self) -> Duplex {
        match self {
            Constant::Pi => const_pi(),
            Constant::E => const_e(),
            Constant::Sqrt2 => const_sqrt(&Rational::from(2)).expect("2 >= 0"),
            Constant::Zeta3 => const_zeta3(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    Const(Constant),
    Sqrt(Rational),
    Neg(Box<Expr>),
    Abs(Box<Expr>),
    Inv(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("bad literal at position {position}: {message}")]
    Literal { position: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(q) => write!(f, "number {q}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' | b'.' => {
                let (q, end) = lex_number(text, start)?;
                out.push((start, Tok::Num(q)));
                i = end;
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let found = text[start..].chars().next().expect("in bounds");
                return Err(ParseError::Syntax {
                    position: start,
                    expected: "a number, name, operator or parenthesis".into(),
                    found: format!("'{found}'"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// Digits with an optional fraction part, or `p/q` with both sides plain
/// digit runs and no spaces.
fn lex_number(text: &str, start: usize) -> Result<(Rational, usize), ParseError> {
    let bytes = text.as_bytes();
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    let mut end = digits_end(start);
    let mut is_decimal = false;
    if end < bytes.len() && bytes[end] == b'.' {
        is_decimal = true;
        end = digits_end(end + 1);
    }
    if !is_decimal && end + 1 < bytes.len() && bytes[end] == b'/' && bytes[end + 1].is_ascii_digit() {
        end = digits_end(end + 1);
    }
    let literal = &text[start..end];
    let bad = |message: String| ParseError::Literal { position: start, message };
    if literal == "." {
        return Err(bad("a decimal point needs digits".into()));
    }
    let q: Rational = literal.parse().map_err(|e| bad(format!("{literal}: {e}")))?;
    Ok((q, end))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn position(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            position: self.position(),
            expected: expected.to_string(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let position = self.position();
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(Expr::Lit(q))
            }
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                self.named(&name, position)
            }
            _ => Err(self.error("a number, constant, function or '('")),
        }
    }

    fn named(&mut self, name: &str, position: usize) -> Result<Expr, ParseError> {
        if let Some(c) = Constant::from_name(name) {
            return Ok(Expr::Const(c));
        }
        let unary: Option<fn(Box<Expr>) -> Expr> = match name {
            "abs" => Some(Expr::Abs),
            "inv" => Some(Expr::Inv),
            "neg" => Some(Expr::Neg),
            _ => None,
        };
        let binary: Option<fn(Box<Expr>, Box<Expr>) -> Expr> = match name {
            "max" => Some(Expr::Max),
            "min" => Some(Expr::Min),
            _ => None,
        };
        if unary.is_none() && binary.is_none() && name != "sqrt" {
            return Err(ParseError::Syntax {
                position,
                expected: "a constant (pi, e, sqrt2, zeta3) or function (abs, inv, neg, max, min, sqrt)".into(),
                found: format!("'{name}'"),
            });
        }
        self.expect(Tok::LParen, &format!("'(' after {name}"))?;
        let e = if name == "sqrt" {
            match self.peek().clone() {
                Tok::Num(q) => {
                    self.bump();
                    Expr::Sqrt(q)
                }
                _ => return Err(self.error("a nonnegative rational literal inside sqrt")),
            }
        } else if let Some(make) = unary {
            make(Box::new(self.sum()?))
        } else {
            let a = self.sum()?;
            self.expect(Tok::Comma, "','")?;
            let b = self.sum()?;
            binary.expect("checked above")(Box::new(a), Box::new(b))
        };
        self.expect(Tok::RParen, "')'")?;
        Ok(e)
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            _ => 4,
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool| {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        let p = self.precedence();
        match self {
            Expr::Lit(q) => write!(f, "{q}"),
            Expr::Const(c) => f.write_str(c.name()),
            Expr::Sqrt(q) => write!(f, "sqrt({q})"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                child(f, a, a.precedence() < p)
            }
            Expr::Abs(a) => write!(f, "abs({a})"),
            Expr::Inv(a) => write!(f, "inv({a})"),
            Expr::Max(a, b) => write!(f, "max({a}, {b})"),
            Expr::Min(a, b) => write!(f, "min({a}, {b})"),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match self {
                    Expr::Add(..) => "+",
                    Expr::Sub(..) => "-",
                    Expr::Mul(..) => "*",
                    _ => "/",
                };
                child(f, a, a.precedence() < p)?;
                write!(f, " {op} ")?;
                child(f, b, b.precedence() <= p)
            }
        }
    }
}

/// An apartness certificate issued for one denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// The denominator, printed in parentheses.
    pub denominator: String,
    pub m: String,
    pub level: u32,
}

#[derive(Clone, Debug)]
pub enum Evaluation {
    Value {
        value: Duplex,
        certificates: Vec<Certificate>,
    },
    /// A denominator could not be certified apart from zero.
    Unknown { subexpression: String, budget: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("sqrt of a negative number: {0}")]
    NegativeSqrt(String),
}

struct Evaluator {
    budget: u32,
    certificates: Vec<Certificate>,
}

enum Step {
    Done(Duplex),
    Stuck(String),
}

impl Evaluator {
    fn eval(&mut self, e: &Expr) -> Result<Step, EvalError> {
        use Step::{Done, Stuck};
        macro_rules! sub {
            ($e:expr) => {
                match self.eval($e)? {
                    Done(x) => x,
                    stuck => return Ok(stuck),
                }
            };
        }
        Ok(Done(match e {
            Expr::Lit(q) => Duplex::from_rational(q.clone()),
            Expr::Const(c) => c.duplex(),
            Expr::Sqrt(q) => const_sqrt(q).map_err(|_| EvalError::NegativeSqrt(q.to_string()))?,
            Expr::Neg(a) => -sub!(a),
            Expr::Abs(a) => sub!(a).abs(),
            Expr::Add(a, b) => {
                let x = sub!(a);
                x + sub!(b)
            }
            Expr::Sub(a, b) => {
                let x = sub!(a);
                x - sub!(b)
            }
            Expr::Mul(a, b) => {
                let x = sub!(a);
                x * sub!(b)
            }
            Expr::Max(a, b) => {
                let x = sub!(a);
                x.max(&sub!(b))
            }
            Expr::Min(a, b) => {
                let x = sub!(a);
                x.min(&sub!(b))
            }
            Expr::Inv(a) => {
                let d = sub!(a);
                match self.invert(a, &d) {
                    Some(inv) => inv,
                    None => return Ok(Stuck(format!("({a})"))),
                }
            }
            Expr::Div(a, b) => {
                let x = sub!(a);
                let d = sub!(b);
                match self.invert(b, &d) {
                    Some(inv) => x * inv,
                    None => return Ok(Stuck(format!("({b})"))),
                }
            }
        }))
    }

    fn invert(&mut self, denominator: &Expr, d: &Duplex) -> Option<Duplex> {
        match d.apartness_search(self.budget) {
            Apartness::Apart(w) => {
                self.certificates.push(Certificate {
                    denominator: format!("({denominator})"),
                    m: w.m.to_string(),
                    level: w.level,
                });
                Some(d.inverse(&w).expect("fresh witness certifies"))
            }
            Apartness::Unknown(_) => None,
        }
    }
}

/// Folds `e` into a duplex. Every division and `inv` first searches for an
/// apartness witness with the given budget; failing that, evaluation stops
/// and names the denominator.
pub fn eval_expr(e: &Expr, budget: u32) -> Result<Evaluation, EvalError> {
    let mut ev = Evaluator {
        budget,
        certificates: Vec::new(),
    };
    Ok(match ev.eval(e)? {
        Step::Done(value) => Evaluation::Value {
            value,
            certificates: ev.certificates,
        },
        Step::Stuck(subexpression) => Evaluation::Unknown { subexpression, budget },
    })
}

/// Parses a rational flag value: an integer, a decimal, or `p/q`, with an
/// optional leading minus.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    text.trim().parse::<Rational>().map_err(|e| format!("invalid rational '{text}': {e}"))
}
