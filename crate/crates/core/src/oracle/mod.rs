//! Ground truth by exhaustive search over prenex sentences.
//!
//! Every sentence is equivalent to a prenex one of the same size whose
//! quantifiers bind distinct variables `x1 .. xq` in order, so searching
//! those by increasing size finds true minima.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::logic::{Formula, PrenexFormula, Quantifier, Var};
use crate::semantics::ProfileChecker;
use crate::structures::{class_tuple_of_profile, enumerate_profiles, ClassTuple, TypeProfile, UnaryStructure, Vocabulary};

mod matrices;
mod ranked;

use matrices::MatrixTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_size: usize,
    pub max_quantifiers: usize,
    pub max_variables: usize,
    /// candidate sentences generated before giving up
    pub node_budget: u64,
}

impl EnumerationBudget {
    pub fn with_max_size(max_size: usize) -> Self {
        let q = max_size.saturating_sub(1);
        EnumerationBudget {
            max_size,
            max_quantifiers: q,
            max_variables: q,
            node_budget: 50_000_000,
        }
    }

    pub fn max_quantifiers(self, q: usize) -> Self {
        EnumerationBudget {
            max_quantifiers: q,
            max_variables: self.max_variables.min(q),
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_quantifiers > self.max_size || self.max_variables > self.max_quantifiers {
            return Err(Error::InvalidArgument(format!(
                "budget needs max_variables <= max_quantifiers <= max_size, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Quantifier prefixes bind fresh variables, so both caps bound `q`.
    fn quantifier_cap(&self) -> usize {
        self.max_quantifiers.min(self.max_variables)
    }
}

/// How matrices are deduplicated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Dedup {
    /// Only commuted `∧`/`∨` operands are merged: every prenex NNF sentence
    /// has an enumerated twin of equal size.
    #[default]
    Syntactic,
    /// One matrix per Boolean function of the atomic type of `x1 .. xq`,
    /// the first in size order. Exact for least sizes, far smaller.
    Semantic,
}

/// Calls `visit` on prenex sentences in order of (size, quantifier count,
/// prefix, matrix). Returns `Ok(true)` when the space up to `max_size` was
/// exhausted, `Ok(false)` when `visit` stopped early.
pub fn for_each_sentence(
    vocab: &Vocabulary,
    budget: &EnumerationBudget,
    dedup: Dedup,
    visit: impl FnMut(&PrenexFormula) -> ControlFlow<()>,
) -> Result<bool> {
    walk(vocab, budget, dedup, false, visit)
}

/// With `busy_only`, quantifier counts whose variables cannot all occur in a
/// matrix of the remaining size are skipped (a size-`m` matrix has at most
/// `(m + 1) / 2` atoms, so at most `m + 1` variables).
fn walk(
    vocab: &Vocabulary,
    budget: &EnumerationBudget,
    dedup: Dedup,
    busy_only: bool,
    mut visit: impl FnMut(&PrenexFormula) -> ControlFlow<()>,
) -> Result<bool> {
    budget.validate()?;
    let k = vocab.k();
    let q_cap = budget.quantifier_cap().min(budget.max_size.saturating_sub(1));
    let mut tables: Vec<MatrixTable> = (0..=q_cap).map(|q| MatrixTable::new(q, k, dedup)).collect();
    let mut generated = 0u64;
    for size in 2..=budget.max_size {
        for (q, table) in tables.iter_mut().enumerate().take(q_cap.min(size - 1) + 1).skip(1) {
            if busy_only && q > size - q + 1 {
                continue;
            }
            let matrices = table.of_size(size - q, budget.node_budget)?;
            for code in 0..1u32 << q {
                let prefix: Vec<(Quantifier, Var)> = (0..q)
                    .map(|i| {
                        let kind = if code >> (q - 1 - i) & 1 == 0 {
                            Quantifier::Exists
                        } else {
                            Quantifier::Forall
                        };
                        (kind, i as Var + 1)
                    })
                    .collect();
                for m in matrices.iter() {
                    generated += 1;
                    if generated > budget.node_budget {
                        return Err(Error::BudgetExhausted(budget.node_budget));
                    }
                    let pf = PrenexFormula {
                        prefix: prefix.clone(),
                        matrix: m.clone(),
                    };
                    if visit(&pf).is_break() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Every prenex sentence up to the budget, syntactically deduplicated.
pub fn enumerate_sentences(vocab: &Vocabulary, budget: &EnumerationBudget) -> Result<Vec<PrenexFormula>> {
    let mut out = Vec::new();
    for_each_sentence(vocab, budget, Dedup::Syntactic, |pf| {
        out.push(pf.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// A least-size sentence found by search.
#[derive(Clone, Debug)]
pub struct Minimum {
    pub size: usize,
    pub witness: Formula,
}

/// The first sentence (in search order) with no idle quantifier that
/// `accept` takes. A quantifier whose variable the matrix never mentions can
/// be dropped, giving a smaller candidate that was already tried.
fn first_accepted(
    vocab: &Vocabulary,
    budget: &EnumerationBudget,
    mut accept: impl FnMut(&PrenexFormula, &Formula) -> bool,
) -> Result<Option<Minimum>> {
    let mut found = None;
    walk(vocab, budget, Dedup::Semantic, true, |pf| {
        let used = pf.matrix.variables();
        if pf.prefix.iter().any(|(_, v)| !used.contains(v)) {
            return ControlFlow::Continue(());
        }
        let f = pf.to_formula();
        if accept(pf, &f) {
            found = Some(Minimum {
                size: pf.size(),
                witness: f,
            });
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// `C(𝔐)`: the least size of a sentence defining `s` among structures of its
/// size. `Ok(None)` means `C(𝔐) > max_size`.
pub fn exact_c(s: &UnaryStructure, budget: &EnumerationBudget) -> Result<Option<Minimum>> {
    let target = s.profile();
    let profiles: Vec<TypeProfile> = enumerate_profiles(s.vocab(), s.n()).collect();
    first_accepted(s.vocab(), budget, |_, f| defines_among(f, &profiles, |p| *p == target))
}

/// `C_d` of the class `c`: least size of a sentence of quantifier rank at
/// most `d` true exactly on the class. Sentences need not be prenex here;
/// `max_quantifiers` caps the rank.
pub fn exact_cd(vocab: &Vocabulary, c: &ClassTuple, budget: &EnumerationBudget) -> Result<Option<Minimum>> {
    budget.validate()?;
    if vocab.t() != c.t() {
        return Err(Error::InvalidArgument("class tuple does not match the vocabulary".into()));
    }
    let profiles: Vec<TypeProfile> = enumerate_profiles(vocab, c.n()).collect();
    let target: Vec<bool> = profiles
        .iter()
        .map(|p| class_tuple_of_profile(p, c.d()).expect("d >= 1") == *c)
        .collect();
    let depth = c.d().min(budget.quantifier_cap());
    let found = ranked::least_sentence(vocab.k(), &profiles, &target, depth, budget)?;
    Ok(found.map(|f| Minimum { size: f.size(), witness: f }))
}

fn defines_among(f: &Formula, profiles: &[TypeProfile], inside: impl Fn(&TypeProfile) -> bool) -> bool {
    let checker = ProfileChecker::new(f).expect("enumerated formulas are sentences");
    profiles.iter().all(|p| checker.holds(p) == inside(p))
}

/// Least size of a sentence with at most `budget.max_quantifiers`
/// quantifiers true in every structure of `a` and false in every one of `b`.
pub fn min_separating_sentence(
    vocab: &Vocabulary,
    a: &[UnaryStructure],
    b: &[UnaryStructure],
    budget: &EnumerationBudget,
) -> Result<Option<Minimum>> {
    let pa: Vec<TypeProfile> = dedup_profiles(a);
    let pb: Vec<TypeProfile> = dedup_profiles(b);
    first_accepted(vocab, budget, |_, f| {
        let checker = ProfileChecker::new(f).expect("sentence");
        pa.iter().all(|p| checker.holds(p)) && !pb.iter().any(|p| checker.holds(p))
    })
}

fn dedup_profiles(structures: &[UnaryStructure]) -> Vec<TypeProfile> {
    let set: HashSet<TypeProfile> = structures.iter().map(UnaryStructure::profile).collect();
    set.into_iter().collect()
}
