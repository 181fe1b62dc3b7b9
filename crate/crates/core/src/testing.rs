//! Generators shared by unit tests.

use proptest::prelude::*;

use crate::logic::{Formula, Formula::*, Var};

/// Every formula of exactly `size` over the given atoms and binder variables.
pub fn all_of_size(size: usize, atoms: &[Formula], binders: &[Var], memo: &mut Vec<Vec<Formula>>) -> Vec<Formula> {
    while memo.len() <= size {
        let s = memo.len();
        let mut out = Vec::new();
        if s == 1 {
            out.extend_from_slice(atoms);
        } else if s >= 2 {
            for body in &memo[s - 1] {
                for &v in binders {
                    out.push(Formula::exists(v, body.clone()));
                    out.push(Formula::forall(v, body.clone()));
                }
            }
            for ls in 1..s - 1 {
                for a in &memo[ls] {
                    for b in &memo[s - 1 - ls] {
                        out.push(Formula::and(a.clone(), b.clone()));
                        out.push(Formula::or(a.clone(), b.clone()));
                    }
                }
            }
        }
        memo.push(out);
    }
    memo[size].clone()
}

pub fn arb_formula(k: usize, max_var: Var) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (1..=max_var, 1..=max_var).prop_map(|(x, y)| Eq(x, y)),
        (1..=max_var, 1..=max_var).prop_map(|(x, y)| Neq(x, y)),
        (0..k, 1..=max_var).prop_map(|(p, x)| Pred(p, x)),
        (0..k, 1..=max_var).prop_map(|(p, x)| NegPred(p, x)),
    ];
    leaf.prop_recursive(6, 48, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (1..=max_var, inner.clone()).prop_map(|(v, b)| Formula::exists(v, b)),
            (1..=max_var, inner).prop_map(|(v, b)| Formula::forall(v, b)),
        ]
    })
}


/// Closes `f` by existentially quantifying its free variables.
pub fn close(f: Formula) -> Formula {
    let free: Vec<Var> = f.free_vars().into_iter().collect();
    Formula::exists_many(free, f)
}

pub fn arb_sentence(k: usize, max_var: Var) -> impl Strategy<Value = Formula> {
    arb_formula(k, max_var).prop_map(close)
}
