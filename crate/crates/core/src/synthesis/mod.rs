//! Linear-size defining sentences for isomorphism classes and `≡_d` classes.
//!
//! Realized types are ordered by ascending count, ties by ascending type
//! index. Big conjunctions and disjunctions fold to the right; empty ones are
//! left out.

use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Formula, Var};
use crate::structures::{ClassTuple, TypeProfile, UnaryStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// lower bounds on every realized type
    Phi,
    /// lower and upper bounds on all but the largest type
    Psi,
    PhiD,
    PsiD,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Phi => "phi",
            Variant::Psi => "psi",
            Variant::PhiD => "phi_d",
            Variant::PsiD => "psi_d",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisPlan {
    pub realized_types: Vec<usize>,
    pub counts: Vec<usize>,
    pub variant: Variant,
}

#[derive(Clone, Debug)]
pub struct Synthesized {
    pub plan: SynthesisPlan,
    pub formula: Formula,
}

/// `π_j(v)`: one literal per predicate, positive where bit `i` of `j` is set.
pub fn type_formula(k: usize, j: usize, v: Var) -> Formula {
    Formula::big_and((0..k).map(|p| {
        if (j >> p) & 1 == 1 {
            Formula::Pred(p, v)
        } else {
            Formula::NegPred(p, v)
        }
    }))
    .expect("k >= 1")
}

fn validate(types: &[usize], m: &[usize]) -> Result<()> {
    if m.is_empty() {
        return Err(Error::InvalidArgument("count sequence is empty".into()));
    }
    if m.len() > types.len() {
        return Err(Error::InvalidArgument(format!(
            "{} counts for only {} types",
            m.len(),
            types.len()
        )));
    }
    if m[0] == 0 || m.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument(format!(
            "counts {m:?} must be positive and weakly increasing"
        )));
    }
    Ok(())
}

/// `⋁_{j ≥ r} π_j(x1)` over the types without a count; `None` if there are none.
fn ignored(k: usize, types: &[usize], r: usize) -> Option<Formula> {
    Formula::big_or(types[r..].iter().map(|&j| type_formula(k, j, 1)))
}

fn or_opt(a: Option<Formula>, b: Formula) -> Formula {
    match a {
        Some(a) => Formula::or(a, b),
        None => b,
    }
}

/// `φ(T, m̄)`: on structures realizing exactly `T`, true iff `types[i]` has at
/// least `m[i]` realizers for each `i < m.len()`. Variables `x1 .. x_{m_r-1}`
/// are universal and `y = x_{m_r}` existential. `None` when `m_r = 1`, where
/// the statement is implied by every type being realized.
pub fn at_least_formula(k: usize, types: &[usize], m: &[usize]) -> Result<Option<Formula>> {
    validate(types, m)?;
    let r = m.len();
    let top = m[r - 1];
    if top == 1 {
        return Ok(None);
    }
    let y = top as Var;
    let group = |i: usize| {
        Formula::big_or(
            (0..r)
                .filter(|&j| m[j] == i)
                .map(|j| Formula::and(type_formula(k, types[j], 1), type_formula(k, types[j], y))),
        )
    };
    let mut psi = Formula::and(
        Formula::Neq(y, (top - 1) as Var),
        group(top).expect("the largest count occurs"),
    );
    for i in (2..top).rev() {
        psi = Formula::and(Formula::Neq(y, (i - 1) as Var), or_opt(group(i), psi));
    }
    let ones = Formula::big_or((0..r).filter(|&j| m[j] == 1).map(|j| type_formula(k, types[j], 1)));
    psi = or_opt(ones, psi);
    let body = or_opt(ignored(k, types, r), psi);
    Ok(Some(Formula::forall_many(1..top as Var, Formula::exists(y, body))))
}

/// `χ(T, m̄)`: on structures realizing exactly `T`, true iff `types[i]` has at
/// most `m[i]` realizers. Shape `∀x1 ∃x2 .. ∃x_{m_r} ∀y` with `y = x_{m_r+1}`.
pub fn at_most_formula(k: usize, types: &[usize], m: &[usize]) -> Result<Formula> {
    validate(types, m)?;
    let r = m.len();
    let top = m[r - 1];
    let y = (top + 1) as Var;
    let with_count = |i: usize| (0..r).filter(move |&j| m[j] == i);
    let escape = |i: usize| {
        Formula::big_or(
            with_count(i).map(|j| Formula::and(type_formula(k, types[j], 1), type_formula(k, types[j], y).negate())),
        )
    };
    let mut theta = Formula::or(Formula::Eq(y, top as Var), escape(top).expect("the largest count occurs"));
    for i in (1..top).rev() {
        let rest = match escape(i) {
            None => theta,
            Some(esc) => {
                let not_here = Formula::big_and(with_count(i).map(|j| type_formula(k, types[j], 1).negate()))
                    .expect("same index set as the escape");
                Formula::or(esc, Formula::and(not_here, theta))
            }
        };
        theta = Formula::or(Formula::Eq(y, i as Var), rest);
    }
    let body = or_opt(ignored(k, types, r), theta);
    let inner = Formula::forall(y, body);
    Ok(Formula::forall(1, Formula::exists_many(2..=top as Var, inner)))
}

/// `⋀ ∃x π_i(x) ∧ ∀x ⋁ π_i(x)`, as a list of conjuncts.
fn realization_conjuncts(k: usize, types: &[usize]) -> Vec<Formula> {
    let mut parts: Vec<Formula> = types.iter().map(|&j| Formula::exists(1, type_formula(k, j, 1))).collect();
    parts.push(Formula::forall(
        1,
        Formula::big_or(types.iter().map(|&j| type_formula(k, j, 1))).expect("some type is realized"),
    ));
    parts
}

/// Realization conjuncts, then `φ(T, m_lo)`, then `χ(T, m_hi)` when given.
fn assemble(k: usize, types: &[usize], at_least: &[usize], at_most: &[usize]) -> Formula {
    let mut parts = realization_conjuncts(k, types);
    if !at_least.is_empty() {
        parts.extend(at_least_formula(k, types, at_least).expect("counts sorted and positive"));
    }
    if !at_most.is_empty() {
        parts.push(at_most_formula(k, types, at_most).expect("counts sorted and positive"));
    }
    Formula::big_and(parts).expect("nonempty")
}

fn smaller(first: Synthesized, second: Option<Synthesized>) -> Synthesized {
    match second {
        Some(s) if s.formula.size() < first.formula.size() => s,
        _ => first,
    }
}

/// Defining sentence for the isomorphism class of structures with profile `p`.
pub fn synthesize_profile(p: &TypeProfile) -> Result<Synthesized> {
    if p.n() == 0 {
        return Err(Error::InvalidArgument("cannot define the empty structure".into()));
    }
    let k = p.t().trailing_zeros() as usize;
    let types = p.realized_ascending();
    let counts: Vec<usize> = types.iter().map(|&j| p.counts()[j]).collect();
    let l = types.len();
    let plan = |variant| SynthesisPlan {
        realized_types: types.clone(),
        counts: counts.clone(),
        variant,
    };
    let phi = Synthesized {
        plan: plan(Variant::Phi),
        formula: assemble(k, &types, &counts, &[]),
    };
    let rest = &counts[..l - 1];
    let psi = Synthesized {
        plan: plan(Variant::Psi),
        formula: assemble(k, &types, rest, rest),
    };
    Ok(smaller(phi, Some(psi)))
}

/// The smaller of the two constructions; ties go to the first.
pub fn synthesize_full(s: &UnaryStructure) -> Formula {
    synthesize_profile(&s.profile()).expect("structures are nonempty").formula
}

/// Defining sentence of quantifier rank at most `d` for the `≡_d` class `c`.
///
/// Types are ordered with counts in `(0, d)` ascending first, then those at
/// `d`. The second construction, which leaves the largest type uncounted, is
/// built whenever at most one entry equals `d`.
pub fn synthesize_class(c: &ClassTuple) -> Synthesized {
    let k = c.t().trailing_zeros() as usize;
    let d = c.d();
    let mut types: Vec<usize> = (0..c.t()).filter(|&j| c.m()[j] > 0).collect();
    types.sort_by_key(|&j| (c.m()[j], j));
    let counts: Vec<usize> = types.iter().map(|&j| c.m()[j]).collect();
    let l = types.len();
    let r = counts.iter().filter(|&&m| m < d).count();
    let plan = |variant| SynthesisPlan {
        realized_types: types.clone(),
        counts: counts.clone(),
        variant,
    };
    let phi_d = Synthesized {
        plan: plan(Variant::PhiD),
        formula: assemble(k, &types, &counts, &counts[..r]),
    };
    let psi_d = (l - r <= 1).then(|| {
        let rest = &counts[..l - 1];
        Synthesized {
            plan: plan(Variant::PsiD),
            formula: assemble(k, &types, rest, rest),
        }
    });
    smaller(phi_d, psi_d)
}

pub fn synthesize_d(c: &ClassTuple) -> Formula {
    synthesize_class(c).formula
}

/// `min(3|π_ℓ|, 6|π_{ℓ-1}|) + c_τ`, or `c_τ` when a single type is realized.
pub fn upper_bound_profile(p: &TypeProfile) -> usize {
    let k = p.t().trailing_zeros() as usize;
    let c_tau = 15 * k * p.t();
    let types = p.realized_ascending();
    if types.len() < 2 {
        return c_tau;
    }
    (3 * p.largest()).min(6 * p.second_largest()) + c_tau
}

pub fn upper_bound(s: &UnaryStructure) -> usize {
    upper_bound_profile(&s.profile())
}

/// `3d + 3m_r + c_τ` with `m_r` the largest entry below `d`; when the second
/// largest entry is below `d` as well, the smaller of that and `6m_{t-1} + c_τ`.
pub fn upper_bound_d(c: &ClassTuple) -> usize {
    let k = c.t().trailing_zeros() as usize;
    let c_tau = 15 * k * c.t();
    let general = 3 * c.d() + 3 * c.highest_below_d() + c_tau;
    if c.second_largest() < c.d() {
        general.min(6 * c.second_largest() + c_tau)
    } else {
        general
    }
}
