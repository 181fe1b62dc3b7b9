//! Evaluation that factors through the type profile.
//!
//! Inside a structure, two tuples with the same types and the same equality
//! pattern are related by an automorphism, so a quantifier only needs to try
//! the elements already bound in its context plus one unbound element per
//! type, and its truth value can be cached per (node, pattern).

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::logic::{Formula, Var};
use crate::structures::TypeProfile;

use super::require_sentence;

type Slot = usize;
type NodeId = u32;

#[derive(Debug)]
enum Node {
    Eq(Slot, Slot),
    Neq(Slot, Slot),
    Pred(usize, Slot),
    NegPred(usize, Slot),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Quant {
        universal: bool,
        slot: Slot,
        body: NodeId,
        /// slots free in this node, ascending
        context: Vec<Slot>,
    },
}

/// A sentence compiled for repeated evaluation against many profiles.
#[derive(Debug)]
pub struct ProfileChecker {
    nodes: Vec<Node>,
    root: NodeId,
    slots: usize,
    max_predicate: Option<usize>,
}

impl ProfileChecker {
    pub fn new(f: &Formula) -> Result<Self> {
        require_sentence(f)?;
        let slot_of: BTreeMap<Var, Slot> = f.variables().into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut nodes = Vec::new();
        let (root, _) = compile(f, &slot_of, &mut nodes);
        Ok(Self {
            nodes,
            root,
            slots: slot_of.len(),
            max_predicate: f.max_predicate(),
        })
    }

    /// Truth in the structures of profile `p`.
    ///
    /// # Panics
    /// If the sentence mentions a predicate outside the profile's vocabulary.
    pub fn holds(&self, p: &TypeProfile) -> bool {
        self.try_holds(p).expect("sentence fits the profile's vocabulary")
    }

    pub fn try_holds(&self, p: &TypeProfile) -> Result<bool> {
        let k = p.t().trailing_zeros() as usize;
        if let Some(max) = self.max_predicate.filter(|&m| m >= k) {
            return Err(Error::InvalidArgument(format!(
                "predicate index {max} outside a vocabulary of {k} predicates"
            )));
        }
        if p.n() == 0 {
            return Err(Error::InvalidArgument("empty domain".into()));
        }
        let mut start = Vec::with_capacity(p.t());
        let mut type_of = Vec::with_capacity(p.n());
        for (j, &c) in p.counts().iter().enumerate() {
            start.push(type_of.len());
            type_of.extend(std::iter::repeat_n(j, c));
        }
        let mut run = Run {
            nodes: &self.nodes,
            counts: p.counts(),
            start,
            type_of,
            env: vec![usize::MAX; self.slots],
            memo: HashMap::new(),
        };
        Ok(run.eval(self.root))
    }
}

fn compile(f: &Formula, slot_of: &BTreeMap<Var, Slot>, nodes: &mut Vec<Node>) -> (NodeId, Vec<Slot>) {
    let s = |v: &Var| slot_of[v];
    let (node, free) = match f {
        Formula::Eq(x, y) | Formula::Neq(x, y) => {
            let mut free = vec![s(x), s(y)];
            free.sort_unstable();
            free.dedup();
            let node = if matches!(f, Formula::Eq(..)) {
                Node::Eq(s(x), s(y))
            } else {
                Node::Neq(s(x), s(y))
            };
            (node, free)
        }
        Formula::Pred(p, x) => (Node::Pred(*p, s(x)), vec![s(x)]),
        Formula::NegPred(p, x) => (Node::NegPred(*p, s(x)), vec![s(x)]),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a, mut fa) = compile(a, slot_of, nodes);
            let (b, fb) = compile(b, slot_of, nodes);
            fa.extend(fb);
            fa.sort_unstable();
            fa.dedup();
            let node = if matches!(f, Formula::And(..)) {
                Node::And(a, b)
            } else {
                Node::Or(a, b)
            };
            (node, fa)
        }
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let (b, mut fb) = compile(body, slot_of, nodes);
            fb.retain(|&x| x != s(v));
            let node = Node::Quant {
                universal: matches!(f, Formula::Forall(..)),
                slot: s(v),
                body: b,
                context: fb.clone(),
            };
            (node, fb)
        }
    };
    nodes.push(node);
    ((nodes.len() - 1) as NodeId, free)
}

struct Run<'a> {
    nodes: &'a [Node],
    counts: &'a [usize],
    start: Vec<usize>,
    type_of: Vec<usize>,
    env: Vec<usize>,
    memo: HashMap<(NodeId, Vec<u64>), bool>,
}

impl Run<'_> {
    fn eval(&mut self, id: NodeId) -> bool {
        match &self.nodes[id as usize] {
            Node::Eq(x, y) => self.env[*x] == self.env[*y],
            Node::Neq(x, y) => self.env[*x] != self.env[*y],
            Node::Pred(p, x) => (self.type_of[self.env[*x]] >> p) & 1 == 1,
            Node::NegPred(p, x) => (self.type_of[self.env[*x]] >> p) & 1 == 0,
            Node::And(a, b) => {
                let (a, b) = (*a, *b);
                self.eval(a) && self.eval(b)
            }
            Node::Or(a, b) => {
                let (a, b) = (*a, *b);
                self.eval(a) || self.eval(b)
            }
            Node::Quant {
                universal,
                slot,
                body,
                context,
            } => {
                let (universal, slot, body) = (*universal, *slot, *body);
                let bound: Vec<usize> = context.iter().map(|&c| self.env[c]).collect();
                let key = (id, self.pattern(&bound));
                if let Some(&hit) = self.memo.get(&key) {
                    return hit;
                }
                let mut candidates = bound.clone();
                candidates.sort_unstable();
                candidates.dedup();
                for (j, &c) in self.counts.iter().enumerate() {
                    let range = self.start[j]..self.start[j] + c;
                    if let Some(e) = range.into_iter().find(|e| !bound.contains(e)) {
                        candidates.push(e);
                    }
                }
                let saved = self.env[slot];
                let mut result = universal;
                for e in candidates {
                    self.env[slot] = e;
                    if self.eval(body) != universal {
                        result = !universal;
                        break;
                    }
                }
                self.env[slot] = saved;
                self.memo.insert(key, result);
                result
            }
        }
    }

    /// Isomorphism invariant of the bound tuple: per position, its type and
    /// the first position holding the same element.
    fn pattern(&self, bound: &[usize]) -> Vec<u64> {
        bound
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let first = bound.iter().position(|x| x == e).unwrap_or(i);
                ((self.type_of[*e] as u64) << 32) | first as u64
            })
            .collect()
    }
}
