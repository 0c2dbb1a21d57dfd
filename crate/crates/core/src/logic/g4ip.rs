//! Dyckhoff's contraction-free sequent calculus G4ip (LJT).
//!
//! Sequents are `Γ ⇒ G` with `Γ` a set. The left implication rule is split
//! by the shape of the antecedent:
//!
//! ```text
//!  Γ, p, B ⇒ G              Γ, C ⇒ (D ⇒ B) ⇒ G        Γ, C ⇒ B, D ⇒ B ⇒ G
//! ─────────────── p atom    ─────────────────────     ─────────────────────
//!  Γ, p, p⇒B ⇒ G            Γ, (C∧D) ⇒ B ⇒ G           Γ, (C∨D) ⇒ B ⇒ G
//!
//!  Γ, D⇒B ⇒ C⇒D     Γ, B ⇒ G
//! ───────────────────────────
//!      Γ, (C⇒D) ⇒ B ⇒ G
//! ```
//!
//! Every premise is smaller than its conclusion in the multiset ordering
//! on formula weights, so the search terminates without loop checks. All
//! rules except `∨R` and the last one are invertible and applied eagerly.

use std::collections::HashMap;

use super::lower::{Arena, Id, Node};
use super::Formula;

struct Prover {
    arena: Arena,
    memo: HashMap<(Vec<Id>, Id), bool>,
}

pub(crate) fn provable(f: &Formula) -> bool {
    let mut arena = Arena::default();
    let goal = arena.lower(f);
    let mut prover = Prover {
        arena,
        memo: HashMap::new(),
    };
    prover.prove(Vec::new(), goal)
}

fn normalize(mut ctx: Vec<Id>) -> Vec<Id> {
    ctx.sort_unstable();
    ctx.dedup();
    ctx
}

fn replace(ctx: &[Id], i: usize, with: &[Id]) -> Vec<Id> {
    let mut out: Vec<Id> = ctx.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &h)| h).collect();
    out.extend_from_slice(with);
    normalize(out)
}

fn extend(ctx: &[Id], with: Id) -> Vec<Id> {
    let mut out = ctx.to_vec();
    out.push(with);
    normalize(out)
}

impl Prover {
    fn prove(&mut self, ctx: Vec<Id>, goal: Id) -> bool {
        let bot = self.arena.bot();
        if ctx.binary_search(&bot).is_ok() || ctx.binary_search(&goal).is_ok() {
            return true;
        }
        let key = (ctx, goal);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (ctx, goal) = key;
        let result = self.search(&ctx, goal);
        self.memo.insert((ctx, goal), result);
        result
    }

    fn search(&mut self, ctx: &[Id], goal: Id) -> bool {
        // Invertible left rules.
        for (i, &h) in ctx.iter().enumerate() {
            match self.arena.node(h) {
                Node::And(a, b) => return self.prove(replace(ctx, i, &[a, b]), goal),
                Node::Or(a, b) => {
                    return self.prove(replace(ctx, i, &[a]), goal) && self.prove(replace(ctx, i, &[b]), goal)
                }
                Node::Imp(a, b) => match self.arena.node(a) {
                    Node::Bot => return self.prove(replace(ctx, i, &[]), goal),
                    Node::Atom(_) if ctx.binary_search(&a).is_ok() => {
                        return self.prove(replace(ctx, i, &[b]), goal)
                    }
                    Node::And(c, d) => {
                        let db = self.arena.intern(Node::Imp(d, b));
                        let cdb = self.arena.intern(Node::Imp(c, db));
                        return self.prove(replace(ctx, i, &[cdb]), goal);
                    }
                    Node::Or(c, d) => {
                        let cb = self.arena.intern(Node::Imp(c, b));
                        let db = self.arena.intern(Node::Imp(d, b));
                        return self.prove(replace(ctx, i, &[cb, db]), goal);
                    }
                    _ => {}
                },
                _ => {}
            }
        }

        // Invertible right rules.
        match self.arena.node(goal) {
            Node::And(a, b) => return self.prove(ctx.to_vec(), a) && self.prove(ctx.to_vec(), b),
            Node::Imp(a, b) => return self.prove(extend(ctx, a), b),
            _ => {}
        }

        // Choices.
        if let Node::Or(a, b) = self.arena.node(goal) {
            if self.prove(ctx.to_vec(), a) || self.prove(ctx.to_vec(), b) {
                return true;
            }
        }
        for (i, &h) in ctx.iter().enumerate() {
            let Node::Imp(cd, b) = self.arena.node(h) else {
                continue;
            };
            let Node::Imp(_, d) = self.arena.node(cd) else {
                continue;
            };
            let db = self.arena.intern(Node::Imp(d, b));
            if self.prove(replace(ctx, i, &[db]), cd) && self.prove(replace(ctx, i, &[b]), goal) {
                return true;
            }
        }
        false
    }
}
