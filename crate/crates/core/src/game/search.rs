//! Exact solver for the prenex formula size game.
//!
//! Instead of deciding `FS(r, q, A, B)` for each `r`, the search computes the
//! least `r` for which S wins, together with the separating formula his
//! strategy spells out. Both phases carry a cap: once a branch provably
//! needs `cap` or more it is cut, and the memo remembers the cut as a lower
//! bound.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::logic::{Formula, Var};

const INFINITE: u32 = u32::MAX / 4;

/// A structure with an assignment, up to isomorphism: the type profile plus,
/// for each assigned variable in order, the element's type and its ordinal
/// among the distinct assigned elements of that type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Pointed {
    pub counts: Vec<usize>,
    pub tuple: Vec<(usize, usize)>,
}

impl Pointed {
    /// One representative per orbit of extensions by a new element.
    pub(crate) fn extensions(&self) -> Vec<Pointed> {
        let mut used: Vec<usize> = vec![0; self.counts.len()];
        for &(ty, ord) in &self.tuple {
            used[ty] = used[ty].max(ord + 1);
        }
        let mut seen: Vec<(usize, usize)> = self.tuple.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.extend(
            (0..self.counts.len())
                .filter(|&ty| used[ty] < self.counts[ty])
                .map(|ty| (ty, used[ty])),
        );
        seen.into_iter()
            .map(|e| {
                let mut tuple = self.tuple.clone();
                tuple.push(e);
                Pointed {
                    counts: self.counts.clone(),
                    tuple,
                }
            })
            .collect()
    }
}

/// The atoms over `x1 .. x_vars`: `xi = xj` for `i <= j`, then `P_p(xi)`.
pub(super) fn atoms(vars: usize, k: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    for i in 1..=vars as Var {
        for j in i..=vars as Var {
            out.push(Formula::Eq(i, j));
        }
    }
    for i in 1..=vars as Var {
        for p in 0..k {
            out.push(Formula::Pred(p, i));
        }
    }
    out
}

fn valuation(m: &Pointed, atoms: &[Formula]) -> u64 {
    let mut mask = 0u64;
    for (bit, atom) in atoms.iter().enumerate() {
        let holds = match atom {
            Formula::Eq(i, j) => m.tuple[*i as usize - 1] == m.tuple[*j as usize - 1],
            Formula::Pred(p, i) => (m.tuple[*i as usize - 1].0 >> p) & 1 == 1,
            _ => unreachable!("only positive atoms are listed"),
        };
        if holds {
            mask |= 1 << bit;
        }
    }
    mask
}

#[derive(Clone, Debug)]
pub(super) struct Outcome {
    /// exact minimum when `exact`, otherwise a lower bound
    pub value: u32,
    pub exact: bool,
    pub formula: Option<Formula>,
}

impl Outcome {
    fn bound(cap: u32) -> Self {
        Outcome {
            value: cap,
            exact: false,
            formula: None,
        }
    }

    fn reusable(&self, cap: u32) -> bool {
        self.exact || self.value >= cap
    }

    fn capped(&self, cap: u32) -> Outcome {
        if self.exact && self.value < cap {
            self.clone()
        } else {
            Outcome::bound(cap)
        }
    }
}

type SetKey = (Vec<u64>, Vec<u64>);
type PositionKey = (usize, usize, Vec<Pointed>, Vec<Pointed>);

pub(super) struct Solver {
    k: usize,
    budget: u64,
    nodes: u64,
    atom_lists: Vec<Vec<Formula>>,
    atomic_memo: HashMap<SetKey, Outcome>,
    memo: HashMap<PositionKey, Outcome>,
}

impl Solver {
    pub fn new(k: usize, budget: u64) -> Self {
        Solver {
            k,
            budget,
            nodes: 0,
            atom_lists: Vec::new(),
            atomic_memo: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }

    fn atoms_for(&mut self, vars: usize) -> Result<&[Formula]> {
        while self.atom_lists.len() <= vars {
            let n = self.atom_lists.len();
            self.atom_lists.push(atoms(n, self.k));
        }
        if self.atom_lists[vars].len() > 64 {
            return Err(Error::InvalidArgument(format!(
                "{} atoms over {vars} variables exceed the 64-bit valuation",
                self.atom_lists[vars].len()
            )));
        }
        Ok(&self.atom_lists[vars])
    }

    /// Least size of a formula with at most `q` quantifiers, true on `a` and
    /// false on `b`, whose quantifiers bind `x_{vars+1}, x_{vars+2}, ...`.
    pub fn solve(&mut self, vars: usize, q: usize, a: Vec<Pointed>, b: Vec<Pointed>, cap: u32) -> Result<Outcome> {
        let key = (vars, q, a, b);
        if let Some(hit) = self.memo.get(&key) {
            if hit.reusable(cap) {
                return Ok(hit.capped(cap));
            }
        }
        self.tick()?;
        let (vars, q, a, b) = key;

        let mut best = {
            let atoms = self.atoms_for(vars)?.to_vec();
            let ma: BTreeSet<u64> = a.iter().map(|m| valuation(m, &atoms)).collect();
            let mb: BTreeSet<u64> = b.iter().map(|m| valuation(m, &atoms)).collect();
            self.atomic(&atoms, ma.into_iter().collect(), mb.into_iter().collect(), cap)?
        };

        // a quantifier costs 1 and still needs an atom below it
        if q > 0 {
            let x = (vars + 1) as Var;
            let a_all = all_extensions(&a);
            let b_all = all_extensions(&b);
            for universal in [false, true] {
                let (chooser, other) = if universal { (&b, &a_all) } else { (&a, &b_all) };
                for chosen in choices(chooser) {
                    let limit = best.value.min(cap);
                    if limit <= 2 {
                        break;
                    }
                    let (na, nb) = if universal {
                        (other.clone(), chosen)
                    } else {
                        (chosen, other.clone())
                    };
                    let sub = self.solve(vars + 1, q - 1, na, nb, limit - 1)?;
                    if sub.exact && sub.value + 1 < limit {
                        let body = sub.formula.expect("exact outcomes carry formulas");
                        best = Outcome {
                            value: sub.value + 1,
                            exact: true,
                            formula: Some(if universal {
                                Formula::forall(x, body)
                            } else {
                                Formula::exists(x, body)
                            }),
                        };
                    }
                }
            }
        }
        let result = if best.exact && best.value < cap {
            best
        } else {
            Outcome::bound(cap)
        };
        self.memo.insert((vars, q, a, b), result.clone());
        Ok(result)
    }

    /// Least size of a quantifier-free formula over `atoms` true on every
    /// valuation in `a` and false on every one in `b`.
    fn atomic(&mut self, atoms: &[Formula], a: Vec<u64>, b: Vec<u64>, cap: u32) -> Result<Outcome> {
        let key = (a, b);
        if let Some(hit) = self.atomic_memo.get(&key) {
            if hit.reusable(cap) {
                return Ok(hit.capped(cap));
            }
        }
        self.tick()?;
        let (a, b) = key;
        let result = self.atomic_uncached(atoms, &a, &b, cap)?;
        self.atomic_memo.insert((a, b), result.clone());
        Ok(result)
    }

    fn atomic_uncached(&mut self, atoms: &[Formula], a: &[u64], b: &[u64], cap: u32) -> Result<Outcome> {
        if a.iter().any(|x| b.contains(x)) {
            // some pair agrees on every atom: nothing quantifier-free separates it
            return Ok(Outcome {
                value: INFINITE,
                exact: true,
                formula: None,
            });
        }
        for (bit, atom) in atoms.iter().enumerate() {
            let on = |m: &u64| (m >> bit) & 1 == 1;
            let literal = if a.iter().all(on) && !b.iter().any(on) {
                Some(atom.clone())
            } else if !a.iter().any(on) && b.iter().all(on) {
                Some(atom.negate())
            } else {
                None
            };
            if let Some(f) = literal {
                return Ok(Outcome {
                    value: 1,
                    exact: true,
                    formula: Some(f),
                });
            }
        }
        if atoms.is_empty() {
            return Ok(Outcome {
                value: INFINITE,
                exact: true,
                formula: None,
            });
        }
        // a connective plus two operands of size >= 1
        let mut best = Outcome::bound(cap);
        for conjunction in [true, false] {
            // ∧ splits B (D picks which part A must be kept apart from), ∨ splits A
            let split = if conjunction { b } else { a };
            if split.len() < 2 {
                continue;
            }
            let rest = &split[1..];
            for mask in 0..(1u64 << rest.len()) - 1 {
                if best.value.min(cap) <= 3 {
                    break;
                }
                let limit = best.value.min(cap);
                let mut left = vec![split[0]];
                let mut right = Vec::new();
                for (i, &m) in rest.iter().enumerate() {
                    if (mask >> i) & 1 == 1 {
                        left.push(m);
                    } else {
                        right.push(m);
                    }
                }
                let part = |p: Vec<u64>| if conjunction { (a.to_vec(), p) } else { (p, b.to_vec()) };
                let (la, lb) = part(left);
                let l = self.atomic(atoms, la, lb, limit - 2)?;
                if !l.exact || l.value + 2 >= limit {
                    continue;
                }
                let (ra, rb) = part(right);
                let r = self.atomic(atoms, ra, rb, limit - 1 - l.value)?;
                if !r.exact || l.value + r.value + 1 >= limit {
                    continue;
                }
                let (lf, rf) = (l.formula.unwrap(), r.formula.unwrap());
                best = Outcome {
                    value: l.value + r.value + 1,
                    exact: true,
                    formula: Some(if conjunction {
                        Formula::and(lf, rf)
                    } else {
                        Formula::or(lf, rf)
                    }),
                };
            }
        }
        Ok(best)
    }
}

fn all_extensions(set: &[Pointed]) -> Vec<Pointed> {
    let all: BTreeSet<Pointed> = set.iter().flat_map(Pointed::extensions).collect();
    all.into_iter().collect()
}

/// Every distinct result of extending each member of `set` by one chosen
/// element, i.e. the sets `A[f/x]` for all `f`.
fn choices(set: &[Pointed]) -> Vec<Vec<Pointed>> {
    let options: Vec<Vec<Pointed>> = set.iter().map(Pointed::extensions).collect();
    let mut results: BTreeSet<Vec<Pointed>> = BTreeSet::new();
    let mut pick = vec![0usize; options.len()];
    loop {
        let chosen: BTreeSet<Pointed> = pick.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
        results.insert(chosen.into_iter().collect());
        let mut i = 0;
        loop {
            if i == pick.len() {
                return results.into_iter().collect();
            }
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}
