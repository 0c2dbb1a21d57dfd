//! Propositional formulas read two ways: classically, by truth tables, and
//! intuitionistically, by a terminating contraction-free sequent search
//! with Kripke countermodels for the failures.
//!
//! Also here: the classical reading of `∨` and `⇒` as abbreviations over
//! `¬` and `∧`, and [`bounded_search`], the budgeted procedure standing in
//! for constructive existence. A "regular procedure" is read as a total
//! procedure with an explicit budget; that is one admissible
//! formalization, not the only one.

mod g4ip;
mod kripke;
mod lower;
mod parse;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::LogicError;

pub use kripke::{verify_countermodel, KripkeModel};
pub use parse::parse_formula;
pub use search::{bounded_search, SearchDomain, SearchOutcome};

/// Largest atom count [`classical_valid`] will enumerate.
pub const TRUTH_TABLE_ATOM_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    pub fn not(a: Formula) -> Self {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Truth value under `assignment`, given as the set of true atoms.
    pub fn eval(&self, assignment: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Formula::Atom(a) => assignment(a),
            Formula::Not(a) => !a.eval(assignment),
            Formula::And(a, b) => a.eval(assignment) && b.eval(assignment),
            Formula::Or(a, b) => a.eval(assignment) || b.eval(assignment),
            Formula::Imp(a, b) => !a.eval(assignment) || b.eval(assignment),
            Formula::Iff(a, b) => a.eval(assignment) == b.eval(assignment),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) | Formula::Not(_) => 5,
            Formula::And(..) => 4,
            Formula::Or(..) => 3,
            Formula::Imp(..) => 2,
            Formula::Iff(..) => 1,
        }
    }
}

/// ASCII rendering in the input grammar with only the parentheses the
/// precedences require, so printing then parsing is the identity.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, c: &Formula, wrap: bool| {
            if wrap {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        let p = self.precedence();
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(a) => {
                write!(f, "~")?;
                child(f, a, a.precedence() < 5)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Iff(a, b) => {
                // Left associative.
                let op = match self {
                    Formula::And(..) => "&",
                    Formula::Or(..) => "|",
                    _ => "<->",
                };
                child(f, a, a.precedence() < p)?;
                write!(f, " {op} ")?;
                child(f, b, b.precedence() <= p)
            }
            Formula::Imp(a, b) => {
                // Right associative.
                child(f, a, a.precedence() <= p)?;
                write!(f, " -> ")?;
                child(f, b, b.precedence() < p)
            }
        }
    }
}

/// True iff `f` holds under every assignment of its atoms.
pub fn classical_valid(f: &Formula) -> Result<bool, LogicError> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    if atoms.len() > TRUTH_TABLE_ATOM_LIMIT {
        return Err(LogicError::TooManyAtoms {
            atoms: atoms.len(),
            limit: TRUTH_TABLE_ATOM_LIMIT,
        });
    }
    let valid = (0u32..1 << atoms.len()).all(|mask| {
        let lookup = |name: &str| {
            let i = atoms.binary_search_by(|a| a.as_str().cmp(name)).expect("known atom");
            mask & (1 << i) != 0
        };
        f.eval(&lookup)
    });
    Ok(valid)
}

/// Decides intuitionistic derivability with Dyckhoff's contraction-free
/// calculus.
pub fn intuitionistic_valid(f: &Formula) -> bool {
    g4ip::provable(f)
}

/// A finite rooted Kripke model whose root does not force `f`, or `None`
/// when `f` is intuitionistically valid.
pub fn intuitionistic_countermodel(f: &Formula) -> Option<KripkeModel> {
    kripke::countermodel(f)
}

/// Rewrites `∨`, `⇒` and `⇔` into `¬`/`∧` form:
/// `p ∨ q` becomes `¬(¬p ∧ ¬q)`, `p ⇒ q` becomes `¬(p ∧ ¬q)`, and `p ⇔ q`
/// the conjunction of its two implications.
pub fn expand_classical_abbreviations(f: &Formula) -> Formula {
    use Formula::*;
    let imp = |a: Formula, b: Formula| Formula::not(Formula::and(a, Formula::not(b)));
    match f {
        Atom(_) => f.clone(),
        Not(a) => Formula::not(expand_classical_abbreviations(a)),
        And(a, b) => Formula::and(expand_classical_abbreviations(a), expand_classical_abbreviations(b)),
        Or(a, b) => Formula::not(Formula::and(
            Formula::not(expand_classical_abbreviations(a)),
            Formula::not(expand_classical_abbreviations(b)),
        )),
        Imp(a, b) => imp(expand_classical_abbreviations(a), expand_classical_abbreviations(b)),
        Iff(a, b) => {
            let (a, b) = (expand_classical_abbreviations(a), expand_classical_abbreviations(b));
            Formula::and(imp(a.clone(), b.clone()), imp(b, a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn classical_examples() {
        assert!(classical_valid(&f("((p -> q) -> p) -> p")).unwrap());
        assert!(classical_valid(&f("p -> (q -> p)")).unwrap());
        assert!(!classical_valid(&f("p -> q")).unwrap());
        assert!(classical_valid(&f("p <-> ~~p")).unwrap());
    }

    #[test]
    fn atom_limit_is_enforced() {
        let big = (0..25)
            .map(|i| Formula::atom(&format!("a{i}")))
            .reduce(Formula::or)
            .unwrap();
        assert_eq!(
            classical_valid(&big),
            Err(LogicError::TooManyAtoms { atoms: 25, limit: 24 })
        );
    }

    #[test]
    fn intuitionistic_examples() {
        assert!(!intuitionistic_valid(&f("p | ~p")));
        assert!(intuitionistic_valid(&f("~(~p & ~~p)")));
        assert!(intuitionistic_valid(&f("p -> (q -> p)")));
        assert!(!intuitionistic_valid(&f("((p -> q) -> p) -> p")));
        assert!(intuitionistic_valid(&f("~~(p | ~p)")));
        assert!(intuitionistic_valid(&f("(p -> q) -> (~q -> ~p)")));
        assert!(!intuitionistic_valid(&f("(~q -> ~p) -> (p -> q)")));
        assert!(intuitionistic_valid(&f("~~~p <-> ~p")));
        assert!(!intuitionistic_valid(&f("~~p -> p")));
        assert!(intuitionistic_valid(&f("(p | q) & r <-> (p & r) | (q & r)")));
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_classical_abbreviations(&f("p | q")), f("~(~p & ~q)"));
        assert_eq!(expand_classical_abbreviations(&f("p -> q")), f("~(p & ~q)"));
        assert_eq!(expand_classical_abbreviations(&f("p | ~p")), f("~(~p & ~~p)"));
        assert_eq!(
            expand_classical_abbreviations(&f("p <-> q")),
            f("~(p & ~q) & ~(q & ~p)")
        );
    }

    #[test]
    fn excluded_middle_readings_differ() {
        let lem = f("p | ~p");
        assert!(!intuitionistic_valid(&lem));
        assert!(intuitionistic_valid(&expand_classical_abbreviations(&lem)));
    }

    #[test]
    fn display_is_minimal() {
        assert_eq!(f("p -> (q -> p)").to_string(), "p -> q -> p");
        assert_eq!(f("((p -> q) -> p) -> p").to_string(), "((p -> q) -> p) -> p");
        assert_eq!(f("~(~p & ~~p)").to_string(), "~(~p & ~~p)");
        assert_eq!(f("(p | q) & r").to_string(), "(p | q) & r");
        assert_eq!(f("p & (q & r)").to_string(), "p & (q & r)");
    }
}
