//! Truth of formulas in structures, and definability of isomorphism and
//! `≡_d` classes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::logic::{Formula, Var};
use crate::structures::{
    class_tuple_of_profile, enumerate_profiles, ClassTuple, Profiles, TypeProfile, UnaryStructure, Vocabulary,
};

mod orbit;

pub use orbit::ProfileChecker;

/// Partial map from variables to domain elements (`0..n`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, usize>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, element: usize) -> Self {
        self.0.insert(v, element);
        self
    }

    pub fn insert(&mut self, v: Var, element: usize) -> Option<usize> {
        self.0.insert(v, element)
    }

    pub fn get(&self, v: Var) -> Option<usize> {
        self.0.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, usize)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }
}

impl FromIterator<(Var, usize)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, usize)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Tarskian truth over the whole domain. The reference evaluator: no
/// shortcuts beyond `∧`/`∨` short-circuiting.
pub fn eval(s: &UnaryStructure, a: &Assignment, f: &Formula) -> Result<bool> {
    check_predicates(s.vocab(), f)?;
    for v in f.free_vars() {
        match a.get(v) {
            None => return Err(Error::UnassignedVariable(v)),
            Some(e) if e >= s.n() => {
                return Err(Error::InvalidArgument(format!(
                    "x{v} is assigned element {e}, outside a domain of size {}",
                    s.n()
                )))
            }
            Some(_) => {}
        }
    }
    let width = f.variables().last().map_or(0, |&v| v as usize + 1);
    let mut env = vec![None; width];
    for (v, e) in a.iter() {
        if (v as usize) < width {
            env[v as usize] = Some(e);
        }
    }
    Ok(eval_in(s, &mut env, f))
}

fn eval_in(s: &UnaryStructure, env: &mut [Option<usize>], f: &Formula) -> bool {
    let val = |env: &[Option<usize>], v: &Var| env[*v as usize].expect("free variables checked");
    match f {
        Formula::Eq(x, y) => val(env, x) == val(env, y),
        Formula::Neq(x, y) => val(env, x) != val(env, y),
        Formula::Pred(p, x) => s.holds(*p, val(env, x)),
        Formula::NegPred(p, x) => !s.holds(*p, val(env, x)),
        Formula::And(a, b) => eval_in(s, env, a) && eval_in(s, env, b),
        Formula::Or(a, b) => eval_in(s, env, a) || eval_in(s, env, b),
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let saved = env[*v as usize];
            let mut result = universal;
            for e in 0..s.n() {
                env[*v as usize] = Some(e);
                if eval_in(s, env, body) != universal {
                    result = !universal;
                    break;
                }
            }
            env[*v as usize] = saved;
            result
        }
    }
}

pub(crate) fn check_predicates(vocab: &Vocabulary, f: &Formula) -> Result<()> {
    match f.max_predicate() {
        Some(p) if p >= vocab.k() => Err(Error::InvalidArgument(format!(
            "predicate index {p} outside a vocabulary of {} predicates",
            vocab.k()
        ))),
        _ => Ok(()),
    }
}

pub(crate) fn require_sentence(f: &Formula) -> Result<()> {
    let free = f.free_vars();
    if free.is_empty() {
        Ok(())
    } else {
        Err(Error::NotSentence(free.into_iter().collect()))
    }
}

/// Truth of sentence `f` in any structure with profile `p`.
pub fn satisfies_profile(p: &TypeProfile, f: &Formula) -> Result<bool> {
    ProfileChecker::new(f)?.try_holds(p)
}

/// `f` holds in `s'` (of the same size) iff `s' ≅ s`.
pub fn defines(s: &UnaryStructure, f: &Formula) -> Result<bool> {
    check_predicates(s.vocab(), f)?;
    let checker = ProfileChecker::new(f)?;
    let target = s.profile();
    Ok(enumerate_profiles(s.vocab(), s.n()).all(|p| checker.holds(&p) == (p == target)))
}

/// `f` holds in a size-`n` structure iff it falls into the `≡_d` class `c`.
/// Rejects sentences of quantifier rank above `d`.
pub fn defines_class(c: &ClassTuple, f: &Formula) -> Result<bool> {
    if f.qrank() > c.d() {
        return Err(Error::QuantifierRank {
            qrank: f.qrank(),
            d: c.d(),
        });
    }
    let k = c.t().trailing_zeros() as usize;
    if let Some(p) = f.max_predicate().filter(|&p| p >= k) {
        return Err(Error::InvalidArgument(format!(
            "predicate index {p} outside a vocabulary of {k} predicates"
        )));
    }
    let checker = ProfileChecker::new(f)?;
    Ok(Profiles::new(c.t(), c.n()).all(|p| {
        let inside = class_tuple_of_profile(&p, c.d()).expect("d >= 1") == *c;
        checker.holds(&p) == inside
    }))
}
