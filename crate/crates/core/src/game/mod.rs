//! The prenex formula size game `FS(r, q, A, B)` and the lower-bound
//! witnesses it certifies.
//!
//! S wins `FS(r, q, A, B)` iff some prenex sentence of size at most `r` with
//! at most `q` quantifiers holds throughout `A` and fails throughout `B`.
//! Quantifier moves always bind the next fresh variable, which loses nothing
//! since prenex forms with distinct variables have the same size.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{Formula, Var};
use crate::semantics::Assignment;
use crate::structures::{ClassTuple, TypeProfile, UnaryStructure, Vocabulary};

mod search;

pub(crate) use search::Pointed;
use search::Solver;

/// Default cap on search nodes before a position is declared intractable.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// Pairs `(structure, assignment)` over one vocabulary and one domain size.
#[derive(Clone, Debug)]
pub struct ModelSet {
    vocab: Vocabulary,
    n: usize,
    models: Vec<(UnaryStructure, Assignment)>,
}

impl ModelSet {
    pub fn new(vocab: &Vocabulary, n: usize, models: Vec<(UnaryStructure, Assignment)>) -> Result<Self> {
        for (s, a) in &models {
            if s.vocab() != vocab || s.n() != n {
                return Err(Error::InvalidArgument(format!(
                    "model {s:?} does not match the set's vocabulary and size {n}"
                )));
            }
            if let Some((v, e)) = a.iter().find(|&(_, e)| e >= n) {
                return Err(Error::InvalidArgument(format!("x{v} assigned element {e} outside 0..{n}")));
            }
        }
        Ok(Self {
            vocab: vocab.clone(),
            n,
            models,
        })
    }

    /// Structures with the empty assignment.
    pub fn sentences_over(structures: &[UnaryStructure]) -> Result<Self> {
        let first = structures
            .first()
            .ok_or_else(|| Error::InvalidArgument("an empty model set has no vocabulary".into()))?;
        Self::new(
            first.vocab(),
            first.n(),
            structures.iter().map(|s| (s.clone(), Assignment::new())).collect(),
        )
    }

    pub fn empty(vocab: &Vocabulary, n: usize) -> Self {
        Self {
            vocab: vocab.clone(),
            n,
            models: Vec::new(),
        }
    }

    pub fn models(&self) -> &[(UnaryStructure, Assignment)] {
        &self.models
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// Canonical forms; every model must assign exactly `x1 .. x_vars`.
    fn pointed(&self, vars: usize) -> Result<Vec<Pointed>> {
        let mut out = BTreeSet::new();
        for (s, a) in &self.models {
            let assigned: Vec<Var> = a.iter().map(|(v, _)| v).collect();
            if assigned != (1..=vars as Var).collect::<Vec<_>>() {
                return Err(Error::InvalidArgument(format!(
                    "assignment binds {assigned:?}, expected exactly x1..x{vars}"
                )));
            }
            let mut seen: Vec<usize> = Vec::new();
            let mut per_type = vec![0usize; self.vocab.t()];
            let mut ordinal = vec![usize::MAX; self.n];
            let tuple = a
                .iter()
                .map(|(_, e)| {
                    let ty = s.type_at(e);
                    if !seen.contains(&e) {
                        seen.push(e);
                        ordinal[e] = per_type[ty];
                        per_type[ty] += 1;
                    }
                    (ty, ordinal[e])
                })
                .collect();
            out.insert(Pointed {
                counts: s.profile().counts().to_vec(),
                tuple,
            });
        }
        Ok(out.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Quantifier,
    Atomic,
}

#[derive(Clone, Debug)]
pub struct GamePosition {
    pub r: u32,
    pub q: u32,
    pub phase: Phase,
    pub a: ModelSet,
    pub b: ModelSet,
    /// The variable the next quantifier move binds; earlier ones are assigned.
    pub next_var: Var,
}

impl GamePosition {
    /// A starting position: empty assignments, quantifier phase.
    pub fn start(r: u32, q: u32, a: ModelSet, b: ModelSet) -> Self {
        GamePosition {
            r,
            q,
            phase: Phase::Quantifier,
            a,
            b,
            next_var: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Player {
    /// Samson, who tries to separate
    S,
    /// Delilah
    D,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub winner: Player,
    /// When S wins: the formula his winning strategy builds, true on `A`,
    /// false on `B`, of size at most `r`.
    pub strategy: Option<Formula>,
    pub nodes: u64,
}

pub fn decide(pos: &GamePosition) -> Result<Decision> {
    decide_with_budget(pos, DEFAULT_NODE_BUDGET)
}

pub fn decide_with_budget(pos: &GamePosition, node_budget: u64) -> Result<Decision> {
    if pos.a.vocab != pos.b.vocab || pos.a.n != pos.b.n {
        return Err(Error::InvalidArgument(
            "both sides must share vocabulary and domain size".into(),
        ));
    }
    if pos.next_var == 0 {
        return Err(Error::InvalidArgument("variables start at x1".into()));
    }
    let vars = pos.next_var as usize - 1;
    let a = pos.a.pointed(vars)?;
    let b = pos.b.pointed(vars)?;
    let q = match pos.phase {
        Phase::Quantifier => pos.q as usize,
        Phase::Atomic => 0,
    };
    let mut solver = Solver::new(pos.a.vocab.k(), node_budget);
    if pos.r == 0 {
        return Ok(Decision {
            winner: Player::D,
            strategy: None,
            nodes: 0,
        });
    }
    let outcome = solver.solve(vars, q, a, b, pos.r + 1)?;
    let win = outcome.exact && outcome.value <= pos.r;
    Ok(Decision {
        winner: if win { Player::S } else { Player::D },
        strategy: if win { outcome.formula } else { None },
        nodes: solver.nodes(),
    })
}

/// Least `r <= r_max` such that S wins `FS(r, q, A, B)` for some
/// `q <= min(q_max, r - 1)`; `None` if there is none.
pub fn min_separating_size(a: &ModelSet, b: &ModelSet, q_max: u32, r_max: u32) -> Result<Option<u32>> {
    Ok(min_separating_formula(a, b, q_max, r_max, DEFAULT_NODE_BUDGET)?.map(|f| f.size() as u32))
}

/// As [`min_separating_size`], returning a smallest separating prenex sentence.
pub fn min_separating_formula(a: &ModelSet, b: &ModelSet, q_max: u32, r_max: u32, node_budget: u64) -> Result<Option<Formula>> {
    if r_max == 0 {
        return Ok(None);
    }
    let q = q_max.min(r_max - 1);
    let d = decide_with_budget(&GamePosition::start(r_max, q, a.clone(), b.clone()), node_budget)?;
    Ok(d.strategy)
}

/// The model `𝔐'` and the bound `C(𝔐) >= 3|π_{ℓ-1}| - 3` it certifies.
#[derive(Clone, Debug)]
pub struct LowerBound {
    /// `None` when a single type is realized (bound 0).
    pub witness: Option<UnaryStructure>,
    pub bound: usize,
}

/// `max(0, 3|π_{ℓ-1}| - 3)`.
pub fn lower_bound_profile(p: &TypeProfile) -> usize {
    (3 * p.second_largest()).saturating_sub(3)
}

/// Moves one point from the second largest realized type to the largest.
pub fn lower_bound_witness(s: &UnaryStructure) -> LowerBound {
    let p = s.profile();
    let types = p.realized_ascending();
    if types.len() < 2 {
        return LowerBound {
            witness: None,
            bound: 0,
        };
    }
    let (from, to) = (types[types.len() - 2], types[types.len() - 1]);
    let element = (0..s.n()).rev().find(|&e| s.type_at(e) == from).expect("type is realized");
    LowerBound {
        witness: Some(s.with_type(element, to).expect("type index in range")),
        bound: (3 * p.counts()[from]).saturating_sub(3),
    }
}

/// `C(ℳ_m̄) >= 3 m_{t-1} - 3`, witnessed on the class member whose largest
/// type takes all remaining points.
pub fn class_lower_bound_witness(vocab: &Vocabulary, c: &ClassTuple) -> Result<(UnaryStructure, LowerBound)> {
    let rep = crate::structures::representative(vocab, &c.maximal_representative_profile())?;
    let lb = lower_bound_witness(&rep);
    Ok((
        rep,
        LowerBound {
            bound: (3 * c.second_largest()).saturating_sub(3),
            ..lb
        },
    ))
}

/// A smallest set of literals over `x1 .. x_vars` such that every pair in
/// `A × B` is told apart by one of them (true on the `A` side). `None` if
/// some pair agrees on all atoms.
pub fn min_separating_atoms(a: &ModelSet, b: &ModelSet, vars: usize) -> Result<Option<Vec<Formula>>> {
    let pa = a.pointed(vars)?;
    let pb = b.pointed(vars)?;
    let atoms = search::atoms(vars, a.vocab.k());
    let literals: Vec<Formula> = atoms.iter().flat_map(|f| [f.clone(), f.negate()]).collect();
    let truth = |m: &Pointed, lit: &Formula| {
        let val = |v: &Var| m.tuple[*v as usize - 1];
        match lit {
            Formula::Eq(i, j) => val(i) == val(j),
            Formula::Neq(i, j) => val(i) != val(j),
            Formula::Pred(p, i) => (val(i).0 >> p) & 1 == 1,
            Formula::NegPred(p, i) => (val(i).0 >> p) & 1 == 0,
            _ => unreachable!(),
        }
    };
    // per pair, the literals that separate it
    let pairs: Vec<u128> = pa
        .iter()
        .flat_map(|x| pb.iter().map(move |y| (x, y)))
        .map(|(x, y)| {
            literals
                .iter()
                .enumerate()
                .filter(|(_, l)| truth(x, l) && !truth(y, l))
                .fold(0u128, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    if literals.len() > 128 {
        return Err(Error::InvalidArgument("too many literals for the diagnostic".into()));
    }
    if pairs.contains(&0) {
        return Ok(None);
    }
    for size in 0..=literals.len() {
        if let Some(set) = first_hitting_set(&pairs, literals.len(), size, 0, 0) {
            return Ok(Some(
                (0..literals.len()).filter(|i| set >> i & 1 == 1).map(|i| literals[i].clone()).collect(),
            ));
        }
    }
    Ok(None)
}

fn first_hitting_set(pairs: &[u128], total: usize, size: usize, from: usize, chosen: u128) -> Option<u128> {
    if pairs.iter().all(|p| p & chosen != 0) {
        return Some(chosen);
    }
    if size == 0 {
        return None;
    }
    (from..total).find_map(|i| first_hitting_set(pairs, total, size - 1, i + 1, chosen | 1 << i))
}

/// Convenience: the least size S needs on `{s}` vs `{s'}` with sentences.
pub fn separation_value(s: &UnaryStructure, t: &UnaryStructure, q_max: u32, r_max: u32) -> Result<Option<u32>> {
    let a = ModelSet::sentences_over(std::slice::from_ref(s))?;
    let b = ModelSet::sentences_over(std::slice::from_ref(t))?;
    min_separating_size(&a, &b, q_max, r_max)
}
