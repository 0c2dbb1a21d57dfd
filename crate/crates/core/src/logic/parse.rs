//! Recursive-descent parser for the ASCII formula grammar:
//!
//! ```text
//! iff  := imp ("<->" imp)*          left associative
//! imp  := or ("->" imp)?            right associative
//! or   := and ("|" and)*
//! and  := not ("&" not)*
//! not  := "~" not | atom | "(" iff ")"
//! atom := [a-z][a-z0-9_]*
//! ```

use super::Formula;
use crate::error::LogicError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Atom(a) => format!("atom `{a}`"),
        Tok::Not => "`~`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Imp => "`->`".into(),
        Tok::Iff => "`<->`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
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
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Imp
            }
            b'<' if text[i..].starts_with("<->") => {
                i += 2;
                Tok::Iff
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                Tok::Atom(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(LogicError::Syntax {
                    position: i,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
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

    fn error(&self, expected: &str) -> LogicError {
        LogicError::Syntax {
            position: self.offset(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        }
    }

    fn iff(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            lhs = Formula::iff(lhs, self.imp()?);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            return Ok(Formula::imp(lhs, self.imp()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.not()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.not()?);
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Formula, LogicError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.not()?))
            }
            Tok::Atom(a) => {
                self.bump();
                Ok(Formula::Atom(a))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("an atom, `~` or `(`")),
        }
    }
}

/// Parses a formula; precedence `~ > & > | > -> > <->`.
pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn examples() {
        assert_eq!(
            parse_formula("p -> (q -> p)").unwrap(),
            Formula::imp(a("p"), Formula::imp(a("q"), a("p")))
        );
        assert_eq!(
            parse_formula("((p -> q) -> p) -> p").unwrap(),
            Formula::imp(Formula::imp(Formula::imp(a("p"), a("q")), a("p")), a("p"))
        );
        assert_eq!(
            parse_formula("p | ~p").unwrap(),
            Formula::or(a("p"), Formula::not(a("p")))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            parse_formula("p -> (q -> r)").unwrap()
        );
        assert_eq!(
            parse_formula("~p & q | r -> s <-> t").unwrap(),
            parse_formula("((((~p) & q) | r) -> s) <-> t").unwrap()
        );
        assert_eq!(
            parse_formula("p & q & r").unwrap(),
            parse_formula("(p & q) & r").unwrap()
        );
        assert_eq!(parse_formula("x_1 | y2").unwrap(), Formula::or(a("x_1"), a("y2")));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("p & ") {
            Err(LogicError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_formula("(p | q") {
            Err(LogicError::Syntax { position, message }) => {
                assert_eq!(position, 6);
                assert!(message.contains("`)`"));
            }
            other => panic!("{other:?}"),
        }
        match parse_formula("p $ q") {
            Err(LogicError::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("P").is_err());
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("").is_err());
    }
}
