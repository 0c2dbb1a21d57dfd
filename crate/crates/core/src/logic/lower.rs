//! Hash-consed core syntax shared by the two intuitionistic engines:
//! atoms, `⊥`, `∧`, `∨`, `⇒`. Negation becomes `A ⇒ ⊥` and `A ⇔ B`
//! becomes `(A ⇒ B) ∧ (B ⇒ A)`.

use std::collections::HashMap;

use super::Formula;

pub(crate) type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Atom(u32),
    Bot,
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
}

#[derive(Default)]
pub(crate) struct Arena {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    atom_names: Vec<String>,
    atom_index: HashMap<String, u32>,
}

impl Arena {
    pub(crate) fn node(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    pub(crate) fn intern(&mut self, node: Node) -> Id {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    pub(crate) fn bot(&mut self) -> Id {
        self.intern(Node::Bot)
    }

    pub(crate) fn atom_name(&self, atom: u32) -> &str {
        &self.atom_names[atom as usize]
    }

    pub(crate) fn lower(&mut self, f: &Formula) -> Id {
        match f {
            Formula::Atom(name) => {
                let next = self.atom_names.len() as u32;
                let a = *self.atom_index.entry(name.clone()).or_insert(next);
                if a == next {
                    self.atom_names.push(name.clone());
                }
                self.intern(Node::Atom(a))
            }
            Formula::Not(a) => {
                let a = self.lower(a);
                let bot = self.bot();
                self.intern(Node::Imp(a, bot))
            }
            Formula::And(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                self.intern(Node::And(a, b))
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                self.intern(Node::Or(a, b))
            }
            Formula::Imp(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                self.intern(Node::Imp(a, b))
            }
            Formula::Iff(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                let ab = self.intern(Node::Imp(a, b));
                let ba = self.intern(Node::Imp(b, a));
                self.intern(Node::And(ab, ba))
            }
        }
    }
}
