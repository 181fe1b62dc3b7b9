//! Negation-normal-form first-order formulas over unary vocabularies.

use std::collections::BTreeSet;
use std::fmt;

use crate::structures::Vocabulary;

mod prenex;
mod text;

pub use prenex::{to_prenex, PrenexFormula, Quantifier};
pub use text::{parse, print};

/// Variable index; variables are `x1, x2, ...`.
pub type Var = u32;

/// A formula in negation normal form. Negation exists only on atoms, so the
/// size metric never has to decide what a `¬` costs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Var, Var),
    Neq(Var, Var),
    Pred(usize, Var),
    NegPred(usize, Var),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Or(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Exists(v, Box::new(body))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Forall(v, Box::new(body))
    }

    /// Right-folded conjunction `a1 ∧ (a2 ∧ (...))`; `None` when empty.
    pub fn big_and<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula>
    where
        I::IntoIter: DoubleEndedIterator,
    {
        parts.into_iter().rev().reduce(|acc, f| Formula::and(f, acc))
    }

    /// Right-folded disjunction; `None` when empty.
    pub fn big_or<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula>
    where
        I::IntoIter: DoubleEndedIterator,
    {
        parts.into_iter().rev().reduce(|acc, f| Formula::or(f, acc))
    }

    /// `Q v1 Q v2 ... body` for the given variables, outermost first.
    pub fn forall_many(vars: impl IntoIterator<Item = Var, IntoIter: DoubleEndedIterator>, body: Formula) -> Formula {
        vars.into_iter().rev().fold(body, |acc, v| Formula::forall(v, acc))
    }

    pub fn exists_many(vars: impl IntoIterator<Item = Var, IntoIter: DoubleEndedIterator>, body: Formula) -> Formula {
        vars.into_iter().rev().fold(body, |acc, v| Formula::exists(v, acc))
    }

    /// Atoms + binary connectives + quantifiers.
    pub fn size(&self) -> usize {
        match self {
            Eq(..) | Neq(..) | Pred(..) | NegPred(..) => 1,
            And(a, b) | Or(a, b) => 1 + a.size() + b.size(),
            Exists(_, b) | Forall(_, b) => 1 + b.size(),
        }
    }

    /// Maximum quantifier nesting depth.
    pub fn qrank(&self) -> usize {
        match self {
            Eq(..) | Neq(..) | Pred(..) | NegPred(..) => 0,
            And(a, b) | Or(a, b) => a.qrank().max(b.qrank()),
            Exists(_, b) | Forall(_, b) => 1 + b.qrank(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.qrank() == 0
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut see = |v: &Var| {
            if !bound.contains(v) {
                out.insert(*v);
            }
        };
        match self {
            Eq(x, y) | Neq(x, y) => {
                see(x);
                see(y);
            }
            Pred(_, x) | NegPred(_, x) => see(x),
            And(a, b) | Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Exists(v, body) | Forall(v, body) => {
                bound.push(*v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable index occurring in the formula, bound or free.
    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Eq(x, y) | Neq(x, y) => {
                out.insert(*x);
                out.insert(*y);
            }
            Pred(_, x) | NegPred(_, x) | Exists(x, _) | Forall(x, _) => {
                out.insert(*x);
            }
            And(..) | Or(..) => {}
        });
        out
    }

    /// Largest predicate index used, if any.
    pub fn max_predicate(&self) -> Option<usize> {
        let mut max = None;
        self.visit(&mut |f| {
            if let Pred(p, _) | NegPred(p, _) = f {
                max = max.max(Some(*p));
            }
        });
        max
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            And(a, b) | Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Exists(_, b) | Forall(_, b) => b.visit(f),
            _ => {}
        }
    }

    /// The NNF dual: equivalent to `¬self`, same size.
    pub fn negate(&self) -> Formula {
        match self {
            Eq(x, y) => Neq(*x, *y),
            Neq(x, y) => Eq(*x, *y),
            Pred(p, x) => NegPred(*p, *x),
            NegPred(p, x) => Pred(*p, *x),
            And(a, b) => Formula::or(a.negate(), b.negate()),
            Or(a, b) => Formula::and(a.negate(), b.negate()),
            Exists(v, b) => Formula::forall(*v, b.negate()),
            Forall(v, b) => Formula::exists(*v, b.negate()),
        }
    }

    /// Renders with predicate names from `vocab`.
    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> impl fmt::Display + 'a {
        text::Printed { f: self, vocab }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_formula(f, self, &|p| format!("P{p}"))
    }
}
