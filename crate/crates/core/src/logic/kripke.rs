//! Finite Kripke models: an independent verifier and a countermodel
//! builder.
//!
//! The builder runs a signed tableau on sets `Γ ⇒ Δ` (multi-succedent).
//! Within one world it saturates: left `∧`, right `∨`, and right `A ⇒ B`
//! with `A ∈ Γ` (reduced to `B ∈ Δ`) extend the sets; left `∨`, right `∧`
//! and left `A ⇒ B` branch. A saturated sequent that does not close becomes
//! a world forcing its atoms in `Γ`, with one successor per right
//! implication `A ⇒ B` (with `A ∉ Γ`), built from `Γ, A ⇒ B`. `Γ` grows
//! strictly on every world change, so the construction terminates.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use super::lower::{Arena, Id, Node};
use super::Formula;

/// A finite Kripke model. The order is the reflexive-transitive closure of
/// `edges`; world 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub edges: Vec<Vec<usize>>,
    pub valuation: Vec<BTreeSet<String>>,
}

impl KripkeModel {
    pub fn world_count(&self) -> usize {
        self.valuation.len()
    }

    /// `reach[w][v]` iff `w <= v`.
    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.world_count();
        let mut reach = vec![vec![false; n]; n];
        for (w, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![w];
            while let Some(v) = stack.pop() {
                if !row[v] {
                    row[v] = true;
                    stack.extend(self.edges[v].iter().copied());
                }
            }
        }
        reach
    }

    /// Forcing relation `w ⊩ f`.
    pub fn forces(&self, world: usize, f: &Formula) -> bool {
        let reach = self.reachability();
        forces(&reach, &self.valuation, world, f)
    }
}

fn forces(reach: &[Vec<bool>], val: &[BTreeSet<String>], w: usize, f: &Formula) -> bool {
    let above = || (0..val.len()).filter(move |&v| reach[w][v]);
    match f {
        Formula::Atom(a) => val[w].contains(a),
        Formula::And(a, b) => forces(reach, val, w, a) && forces(reach, val, w, b),
        Formula::Or(a, b) => forces(reach, val, w, a) || forces(reach, val, w, b),
        Formula::Not(a) => above().all(|v| !forces(reach, val, v, a)),
        Formula::Imp(a, b) => above().all(|v| !forces(reach, val, v, a) || forces(reach, val, v, b)),
        Formula::Iff(a, b) => above().all(|v| forces(reach, val, v, a) == forces(reach, val, v, b)),
    }
}

/// Checks that `model` is a rooted partial order with monotone valuation
/// whose root does not force `f`.
pub fn verify_countermodel(model: &KripkeModel, f: &Formula) -> Result<(), String> {
    let n = model.world_count();
    if n == 0 {
        return Err("model has no worlds".into());
    }
    if model.edges.len() != n {
        return Err(format!("{} edge lists for {n} worlds", model.edges.len()));
    }
    if let Some(bad) = model.edges.iter().flatten().find(|&&v| v >= n) {
        return Err(format!("edge to unknown world {bad}"));
    }
    let reach = model.reachability();
    if let Some(w) = (0..n).find(|&w| !reach[0][w]) {
        return Err(format!("world {w} is not above the root"));
    }
    for w in 0..n {
        for v in 0..n {
            if w != v && reach[w][v] && reach[v][w] {
                return Err(format!("worlds {w} and {v} form a cycle"));
            }
            if reach[w][v] && !model.valuation[w].is_subset(&model.valuation[v]) {
                return Err(format!("valuation shrinks from world {w} to world {v}"));
            }
        }
    }
    if forces(&reach, &model.valuation, 0, f) {
        return Err(format!("root forces {f}"));
    }
    Ok(())
}

impl fmt::Display for KripkeModel {
    /// One line per world: `wI: {atoms} -> wJ wK`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "countermodel: {} worlds, root w0", self.world_count())?;
        for (w, atoms) in self.valuation.iter().enumerate() {
            let atoms: Vec<&str> = atoms.iter().map(String::as_str).collect();
            write!(f, "  w{w}: {{{}}}", atoms.join(", "))?;
            if !self.edges[w].is_empty() {
                let succ: Vec<String> = self.edges[w].iter().map(|v| format!("w{v}")).collect();
                write!(f, " -> {}", succ.join(" "))?;
            }
            if w + 1 < self.world_count() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

struct World {
    atoms: BTreeSet<u32>,
    children: Vec<Rc<World>>,
}

type Key = (Vec<Id>, Vec<Id>);

struct Builder<'a> {
    arena: &'a Arena,
    bot: Id,
    memo: HashMap<Key, Option<Rc<World>>>,
}

pub(crate) fn countermodel(f: &Formula) -> Option<KripkeModel> {
    let mut arena = Arena::default();
    let goal = arena.lower(f);
    let bot = arena.bot();
    let mut builder = Builder {
        arena: &arena,
        bot,
        memo: HashMap::new(),
    };
    let root = builder.refute(BTreeSet::new(), BTreeSet::from([goal]))?;
    Some(flatten(&collapse(&root), &arena))
}

/// Skips worlds whose only successor carries the same atoms; both force the same formulas.
fn collapse(w: &Rc<World>) -> Rc<World> {
    let mut w = Rc::clone(w);
    while w.children.len() == 1 && w.children[0].atoms == w.atoms {
        w = Rc::clone(&w.children[0]);
    }
    w
}

/// Numbers the shared world graph breadth-first from the root.
fn flatten(root: &Rc<World>, arena: &Arena) -> KripkeModel {
    let mut ids: HashMap<*const World, usize> = HashMap::new();
    let mut order: Vec<Rc<World>> = Vec::new();
    ids.insert(Rc::as_ptr(root), 0);
    order.push(Rc::clone(root));
    let mut i = 0;
    while i < order.len() {
        let w = Rc::clone(&order[i]);
        for c in w.children.iter().map(collapse) {
            if let std::collections::hash_map::Entry::Vacant(e) = ids.entry(Rc::as_ptr(&c)) {
                e.insert(order.len());
                order.push(c);
            }
        }
        i += 1;
    }
    let mut edges = Vec::with_capacity(order.len());
    let mut valuation = Vec::with_capacity(order.len());
    for w in &order {
        let mut succ: Vec<usize> = w.children.iter().map(|c| ids[&Rc::as_ptr(&collapse(c))]).collect();
        succ.sort_unstable();
        succ.dedup();
        edges.push(succ);
        valuation.push(w.atoms.iter().map(|&a| arena.atom_name(a).to_string()).collect());
    }
    KripkeModel { edges, valuation }
}

enum Step {
    Extend { left: Vec<Id>, right: Vec<Id> },
    Branch([(Vec<Id>, Vec<Id>); 2]),
}

impl Builder<'_> {
    /// A world forcing all of `gamma` and none of `delta`, if one exists.
    fn refute(&mut self, gamma: BTreeSet<Id>, delta: BTreeSet<Id>) -> Option<Rc<World>> {
        let key: Key = (gamma.iter().copied().collect(), delta.iter().copied().collect());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = self.refute_uncached(gamma, delta);
        self.memo.insert(key, result.clone());
        result
    }

    fn refute_uncached(&mut self, mut gamma: BTreeSet<Id>, mut delta: BTreeSet<Id>) -> Option<Rc<World>> {
        loop {
            if gamma.contains(&self.bot) || !gamma.is_disjoint(&delta) {
                return None;
            }
            match self.next_step(&gamma, &delta) {
                None => break,
                Some(Step::Extend { left, right }) => {
                    gamma.extend(left);
                    delta.extend(right);
                }
                Some(Step::Branch(branches)) => {
                    for (left, right) in branches {
                        let mut g = gamma.clone();
                        let mut d = delta.clone();
                        g.extend(left);
                        d.extend(right);
                        if let Some(w) = self.refute(g, d) {
                            return Some(w);
                        }
                    }
                    return None;
                }
            }
        }

        let mut children = Vec::new();
        for &h in &delta {
            if let Node::Imp(a, b) = self.arena.node(h) {
                if gamma.contains(&a) {
                    continue;
                }
                let mut g = gamma.clone();
                g.insert(a);
                children.push(self.refute(g, BTreeSet::from([b]))?);
            }
        }
        let atoms = gamma
            .iter()
            .filter_map(|&h| match self.arena.node(h) {
                Node::Atom(a) => Some(a),
                _ => None,
            })
            .collect();
        Some(Rc::new(World { atoms, children }))
    }

    /// The first rule with work left to do on a non-closed sequent. Set
    /// extensions come before branching.
    fn next_step(&self, gamma: &BTreeSet<Id>, delta: &BTreeSet<Id>) -> Option<Step> {
        for &h in gamma {
            if let Node::And(a, b) = self.arena.node(h) {
                if !gamma.contains(&a) || !gamma.contains(&b) {
                    return Some(Step::Extend { left: vec![a, b], right: vec![] });
                }
            }
        }
        for &h in delta {
            match self.arena.node(h) {
                Node::Or(a, b) if !delta.contains(&a) || !delta.contains(&b) => {
                    return Some(Step::Extend { left: vec![], right: vec![a, b] });
                }
                Node::Imp(a, b) if gamma.contains(&a) && !delta.contains(&b) => {
                    return Some(Step::Extend { left: vec![], right: vec![b] });
                }
                _ => {}
            }
        }
        for &h in gamma {
            match self.arena.node(h) {
                Node::Or(a, b) if !gamma.contains(&a) && !gamma.contains(&b) => {
                    return Some(Step::Branch([(vec![a], vec![]), (vec![b], vec![])]));
                }
                Node::Imp(a, b) if !delta.contains(&a) && !gamma.contains(&b) => {
                    return Some(Step::Branch([(vec![], vec![a]), (vec![b], vec![])]));
                }
                _ => {}
            }
        }
        for &h in delta {
            if let Node::And(a, b) = self.arena.node(h) {
                if !delta.contains(&a) && !delta.contains(&b) {
                    return Some(Step::Branch([(vec![], vec![a]), (vec![], vec![b])]));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn excluded_middle_has_two_world_countermodel() {
        let lem = f("p | ~p");
        let model = countermodel(&lem).unwrap();
        assert_eq!(model.world_count(), 2);
        assert!(model.valuation[0].is_empty());
        assert_eq!(model.valuation[1], BTreeSet::from(["p".to_string()]));
        verify_countermodel(&model, &lem).unwrap();
    }

    #[test]
    fn peirce_countermodel_verifies() {
        let peirce = f("((p -> q) -> p) -> p");
        let model = countermodel(&peirce).unwrap();
        verify_countermodel(&model, &peirce).unwrap();
    }

    #[test]
    fn valid_formulas_have_no_countermodel() {
        for s in ["p -> (q -> p)", "~(~p & ~~p)", "~~(p | ~p)", "(p & q) -> (q & p)"] {
            assert!(countermodel(&f(s)).is_none(), "{s}");
        }
    }

    #[test]
    fn verifier_rejects_bad_models() {
        let lem = f("p | ~p");
        let one_world = KripkeModel {
            edges: vec![vec![]],
            valuation: vec![BTreeSet::new()],
        };
        assert!(verify_countermodel(&one_world, &lem).unwrap_err().contains("root forces"));

        let shrinking = KripkeModel {
            edges: vec![vec![1], vec![]],
            valuation: vec![BTreeSet::from(["p".to_string()]), BTreeSet::new()],
        };
        assert!(verify_countermodel(&shrinking, &lem).unwrap_err().contains("shrinks"));

        let cyclic = KripkeModel {
            edges: vec![vec![1], vec![0]],
            valuation: vec![BTreeSet::new(), BTreeSet::new()],
        };
        assert!(verify_countermodel(&cyclic, &lem).unwrap_err().contains("cycle"));

        let detached = KripkeModel {
            edges: vec![vec![], vec![]],
            valuation: vec![BTreeSet::new(), BTreeSet::new()],
        };
        assert!(verify_countermodel(&detached, &lem).is_err());
    }

    #[test]
    fn display_lists_worlds() {
        let model = countermodel(&f("p | ~p")).unwrap();
        assert_eq!(
            model.to_string(),
            "countermodel: 2 worlds, root w0\n  w0: {} -> w1\n  w1: {p}"
        );
    }
}
