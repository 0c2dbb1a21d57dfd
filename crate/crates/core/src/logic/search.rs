use std::fmt;

/// The three honest answers to "is there a k with P(k)?": a checked
/// witness, a refutation, or an admission that the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Known(u64),
    Refuted(String),
    Unknown(u64),
}

impl SearchOutcome {
    /// For `Known(k)`, re-evaluates the predicate at `k`; other outcomes
    /// carry nothing to re-check.
    pub fn recheck(&self, pred: impl Fn(u64) -> bool) -> bool {
        match self {
            SearchOutcome::Known(k) => pred(*k),
            _ => true,
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchOutcome::Known(k) => write!(f, "Known({k})"),
            SearchOutcome::Refuted(why) => write!(f, "Refuted({why})"),
            SearchOutcome::Unknown(b) => write!(f, "Unknown({b})"),
        }
    }
}

/// What the caller asserts about `[0, bound)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchDomain {
    /// Only a prefix of an unbounded domain; exhaustion proves nothing.
    Prefix,
    /// The whole domain; exhaustion refutes.
    Exhaustive,
}

/// Least `k < bound` with `pred(k)`.
pub fn bounded_search(pred: impl Fn(u64) -> bool, bound: u64, domain: SearchDomain) -> SearchOutcome {
    match (0..bound).find(|&k| pred(k)) {
        Some(k) => SearchOutcome::Known(k),
        None => match domain {
            SearchDomain::Prefix => SearchOutcome::Unknown(bound),
            SearchDomain::Exhaustive => {
                SearchOutcome::Refuted(format!("no element of the finite domain [0, {bound}) qualifies"))
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn examples() {
        let squares = |k: u64| k * k > 50;
        let out = bounded_search(squares, 100, SearchDomain::Prefix);
        assert_eq!(out, SearchOutcome::Known(8));
        assert!(out.recheck(squares));

        let big_prime = |k: u64| k > 1000 && is_prime(k);
        assert_eq!(bounded_search(big_prime, 2000, SearchDomain::Prefix), SearchOutcome::Known(1009));

        assert!(matches!(
            bounded_search(|_| false, 100, SearchDomain::Exhaustive),
            SearchOutcome::Refuted(_)
        ));
        assert_eq!(bounded_search(|_| false, 100, SearchDomain::Prefix), SearchOutcome::Unknown(100));
    }
}
