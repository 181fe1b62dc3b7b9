//! Least sentences of bounded quantifier rank.
//!
//! Pulling quantifiers to the front can raise the rank (`∃x P(x) ∧ ∃x ¬P(x)`
//! has rank 1, its prenex forms rank 2), so this search runs over all NNF
//! sentences. A quantifier at nesting depth `j` may always be taken to bind
//! `x_{j+1}`; a subformula under `j` quantifiers is then a formula in
//! `x1 .. xj`, and only its truth on size-`n` structures with a `j`-tuple,
//! up to isomorphism, matters. The first subformula per truth table, in
//! size order, stands in for all others.

use std::collections::{HashMap, HashSet};

use super::EnumerationBudget;
use crate::error::{Error, Result};
use crate::game::Pointed;
use crate::logic::{Formula, Var};
use crate::structures::TypeProfile;

struct Context {
    points: Vec<Pointed>,
    /// indices into the next context's points, per point
    extensions: Vec<Vec<usize>>,
    atoms: Vec<(Formula, Vec<u64>)>,
    /// `levels[s]`: the kept formulas of size `s` with their tables
    levels: Vec<Vec<(Formula, Vec<u64>)>>,
    seen: HashSet<Vec<u64>>,
}

fn words(len: usize) -> usize {
    len.div_ceil(64)
}

fn table(points: &[Pointed], holds: impl Fn(&Pointed) -> bool) -> Vec<u64> {
    let mut bits = vec![0u64; words(points.len())];
    for (i, m) in points.iter().enumerate() {
        if holds(m) {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

fn atoms(j: usize, k: usize, points: &[Pointed]) -> Vec<(Formula, Vec<u64>)> {
    let at = |m: &Pointed, v: &Var| m.tuple[*v as usize - 1];
    let mut out = Vec::new();
    for i in 1..=j as Var {
        for l in i..=j as Var {
            out.push(Formula::Eq(i, l));
            out.push(Formula::Neq(i, l));
        }
    }
    for i in 1..=j as Var {
        for p in 0..k {
            out.push(Formula::Pred(p, i));
            out.push(Formula::NegPred(p, i));
        }
    }
    out.into_iter()
        .map(|f| {
            let t = table(points, |m| match &f {
                Formula::Eq(x, y) => at(m, x) == at(m, y),
                Formula::Neq(x, y) => at(m, x) != at(m, y),
                Formula::Pred(p, x) => (at(m, x).0 >> p) & 1 == 1,
                Formula::NegPred(p, x) => (at(m, x).0 >> p) & 1 == 0,
                _ => unreachable!(),
            });
            (f, t)
        })
        .collect()
}

/// Searches sentences of rank at most `depth` by size and returns the first
/// whose truth over `profiles` equals `target`.
pub(super) fn least_sentence(
    k: usize,
    profiles: &[TypeProfile],
    target: &[bool],
    depth: usize,
    budget: &EnumerationBudget,
) -> Result<Option<Formula>> {
    let mut contexts: Vec<Context> = Vec::with_capacity(depth + 1);
    let mut points: Vec<Pointed> = profiles
        .iter()
        .map(|p| Pointed {
            counts: p.counts().to_vec(),
            tuple: Vec::new(),
        })
        .collect();
    for j in 0..=depth {
        let next: Vec<Pointed> = if j < depth {
            let mut all: Vec<Pointed> = points.iter().flat_map(Pointed::extensions).collect();
            all.sort();
            all.dedup();
            all
        } else {
            Vec::new()
        };
        let index: HashMap<&Pointed, usize> = next.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let extensions = if j < depth {
            points
                .iter()
                .map(|m| m.extensions().iter().map(|e| index[e]).collect())
                .collect()
        } else {
            Vec::new()
        };
        contexts.push(Context {
            atoms: atoms(j, k, &points),
            points,
            extensions,
            levels: vec![Vec::new()],
            seen: HashSet::new(),
        });
        points = next;
    }

    let goal = table(&contexts[0].points, |m| {
        let i = profiles.iter().position(|p| p.counts() == m.counts.as_slice()).unwrap();
        target[i]
    });
    let mut generated = 0u64;
    for size in 1..=budget.max_size {
        for j in (0..=depth).rev() {
            let mut fresh: Vec<(Formula, Vec<u64>)> = Vec::new();
            let mut offer = |ctx: &mut Context, f: Formula, t: Vec<u64>| -> Result<()> {
                generated += 1;
                if generated > budget.node_budget {
                    return Err(Error::BudgetExhausted(budget.node_budget));
                }
                if ctx.seen.insert(t.clone()) {
                    fresh.push((f, t));
                }
                Ok(())
            };
            if size == 1 {
                let atoms = std::mem::take(&mut contexts[j].atoms);
                for (f, t) in &atoms {
                    offer(&mut contexts[j], f.clone(), t.clone())?;
                }
                contexts[j].atoms = atoms;
            }
            if j < depth && size >= 2 {
                let (head, tail) = contexts.split_at_mut(j + 1);
                let (ctx, inner) = (&mut head[j], &tail[0]);
                let var = j as Var + 1;
                let ext = std::mem::take(&mut ctx.extensions);
                for (body, bt) in &inner.levels[size - 1] {
                    let bit = |i: usize| (bt[i / 64] >> (i % 64)) & 1 == 1;
                    let mut ex = vec![0u64; words(ctx.points.len())];
                    let mut all = ex.clone();
                    for (i, es) in ext.iter().enumerate() {
                        if es.iter().any(|&e| bit(e)) {
                            ex[i / 64] |= 1 << (i % 64);
                        }
                        if es.iter().all(|&e| bit(e)) {
                            all[i / 64] |= 1 << (i % 64);
                        }
                    }
                    offer(ctx, Formula::exists(var, body.clone()), ex)?;
                    offer(ctx, Formula::forall(var, body.clone()), all)?;
                }
                ctx.extensions = ext;
            }
            let ctx = &mut contexts[j];
            for left in 1..size.saturating_sub(1) {
                let right = size - 1 - left;
                if left > right {
                    break;
                }
                for i in 0..ctx.levels[left].len() {
                    let start = if left == right { i } else { 0 };
                    for r in start..ctx.levels[right].len() {
                        let (a, ta) = ctx.levels[left][i].clone();
                        let (b, tb) = ctx.levels[right][r].clone();
                        let and: Vec<u64> = ta.iter().zip(&tb).map(|(x, y)| x & y).collect();
                        let or: Vec<u64> = ta.iter().zip(&tb).map(|(x, y)| x | y).collect();
                        offer(ctx, Formula::and(a.clone(), b.clone()), and)?;
                        offer(ctx, Formula::or(a, b), or)?;
                    }
                }
            }
            if j == 0 {
                if let Some((f, _)) = fresh.iter().find(|(_, t)| *t == goal) {
                    return Ok(Some(f.clone()));
                }
            }
            contexts[j].levels.push(fresh);
        }
    }
    Ok(None)
}
