use std::collections::{BTreeSet, HashMap};

use super::{Formula, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// `Q1 v1 ... Qm vm . matrix` with distinct `vi` and a quantifier-free matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrenexFormula {
    pub prefix: Vec<(Quantifier, Var)>,
    pub matrix: Formula,
}

impl PrenexFormula {
    pub fn size(&self) -> usize {
        self.prefix.len() + self.matrix.size()
    }

    /// Re-nests the prefix around the matrix.
    pub fn to_formula(&self) -> Formula {
        self.prefix.iter().rev().fold(self.matrix.clone(), |acc, &(q, v)| match q {
            Quantifier::Exists => Formula::exists(v, acc),
            Quantifier::Forall => Formula::forall(v, acc),
        })
    }
}

/// Pulls every quantifier to the front, in pre-order. A binder keeps its name
/// unless that name is already taken (free anywhere, or bound earlier), in
/// which case it gets the smallest untaken index. Binders then never capture
/// or shadow each other, so pulling them across `∧`/`∨` is sound, and the
/// size is unchanged.
pub fn to_prenex(f: &Formula) -> PrenexFormula {
    let mut state = State {
        used: f.free_vars(),
        prefix: Vec::new(),
    };
    let matrix = state.pull(f, &mut HashMap::new());
    PrenexFormula {
        prefix: state.prefix,
        matrix,
    }
}

struct State {
    used: BTreeSet<Var>,
    prefix: Vec<(Quantifier, Var)>,
}

impl State {
    fn fresh(&mut self, preferred: Var) -> Var {
        let v = if self.used.contains(&preferred) {
            (1..).find(|v| !self.used.contains(v)).expect("unbounded supply")
        } else {
            preferred
        };
        self.used.insert(v);
        v
    }

    fn pull(&mut self, f: &Formula, env: &mut HashMap<Var, Var>) -> Formula {
        let look = |env: &HashMap<Var, Var>, v: &Var| *env.get(v).unwrap_or(v);
        match f {
            Formula::Eq(x, y) => Formula::Eq(look(env, x), look(env, y)),
            Formula::Neq(x, y) => Formula::Neq(look(env, x), look(env, y)),
            Formula::Pred(p, x) => Formula::Pred(*p, look(env, x)),
            Formula::NegPred(p, x) => Formula::NegPred(*p, look(env, x)),
            Formula::And(a, b) => {
                let a = self.pull(a, env);
                Formula::and(a, self.pull(b, env))
            }
            Formula::Or(a, b) => {
                let a = self.pull(a, env);
                Formula::or(a, self.pull(b, env))
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let q = if matches!(f, Formula::Exists(..)) {
                    Quantifier::Exists
                } else {
                    Quantifier::Forall
                };
                let renamed = self.fresh(*v);
                self.prefix.push((q, renamed));
                let saved = env.insert(*v, renamed);
                let matrix = self.pull(body, env);
                match saved {
                    Some(old) => env.insert(*v, old),
                    None => env.remove(v),
                };
                matrix
            }
        }
    }
}
