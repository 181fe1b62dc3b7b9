use std::collections::HashSet;

use super::Dedup;
use crate::error::{Error, Result};
use crate::logic::{Formula, Var};

/// Truth tables larger than this are not built.
const MAX_ATOMIC_TYPES: usize = 1 << 20;

/// The atomic type of a tuple `x1 .. xq`: which positions share an element
/// (`block[i]`), and the type of each block.
struct AtomicType {
    block: Vec<usize>,
    types: Vec<usize>,
}

fn atomic_types(q: usize, t: usize) -> Vec<AtomicType> {
    let mut out = Vec::new();
    // restricted growth strings enumerate set partitions of 0..q
    let mut rgs = vec![0usize; q];
    loop {
        let blocks = rgs.iter().max().map_or(0, |&m| m + 1);
        for code in 0..t.pow(blocks as u32) {
            let mut c = code;
            let types = (0..blocks)
                .map(|_| {
                    let ty = c % t;
                    c /= t;
                    ty
                })
                .collect();
            out.push(AtomicType {
                block: rgs.clone(),
                types,
            });
        }
        // next restricted growth string
        let mut i = q;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let max_before = rgs[..i].iter().max().copied().unwrap_or(0);
            if rgs[i] <= max_before {
                rgs[i] += 1;
                for x in &mut rgs[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

fn holds(atom: &Formula, at: &AtomicType) -> bool {
    let b = |v: &Var| at.block[*v as usize - 1];
    match atom {
        Formula::Eq(x, y) => b(x) == b(y),
        Formula::Neq(x, y) => b(x) != b(y),
        Formula::Pred(p, x) => (at.types[b(x)] >> p) & 1 == 1,
        Formula::NegPred(p, x) => (at.types[b(x)] >> p) & 1 == 0,
        _ => unreachable!("atoms only"),
    }
}

/// Quantifier-free matrices over `x1 .. xq`, generated by size.
pub(super) struct MatrixTable {
    dedup: Dedup,
    levels: Vec<Vec<Formula>>,
    /// semantic mode: truth tables aligned with `levels`
    tables: Vec<Vec<Vec<u64>>>,
    seen: HashSet<Vec<u64>>,
    atomic: Vec<AtomicType>,
    atoms: Vec<Formula>,
}

impl MatrixTable {
    pub fn new(q: usize, k: usize, dedup: Dedup) -> Self {
        let mut atoms = Vec::new();
        for i in 1..=q as Var {
            for j in i..=q as Var {
                atoms.push(Formula::Eq(i, j));
                atoms.push(Formula::Neq(i, j));
            }
        }
        for i in 1..=q as Var {
            for p in 0..k {
                atoms.push(Formula::Pred(p, i));
                atoms.push(Formula::NegPred(p, i));
            }
        }
        MatrixTable {
            dedup,
            levels: vec![Vec::new()],
            tables: vec![Vec::new()],
            seen: HashSet::new(),
            atomic: if dedup == Dedup::Semantic && q > 0 {
                atomic_types(q, 1 << k)
            } else {
                Vec::new()
            },
            atoms,
        }
    }

    fn table_of(&self, atom: &Formula) -> Vec<u64> {
        let mut bits = vec![0u64; self.atomic.len().div_ceil(64)];
        for (i, at) in self.atomic.iter().enumerate() {
            if holds(atom, at) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        bits
    }

    pub fn of_size(&mut self, size: usize, budget: u64) -> Result<&[Formula]> {
        if self.dedup == Dedup::Semantic && self.atomic.len() > MAX_ATOMIC_TYPES {
            return Err(Error::InvalidArgument("too many atomic types for semantic deduplication".into()));
        }
        while self.levels.len() <= size {
            let s = self.levels.len();
            let mut level = Vec::new();
            let mut tables = Vec::new();
            let mut push = |this: &mut Self, f: Formula, table: Option<Vec<u64>>, level: &mut Vec<Formula>| -> Result<()> {
                if let Some(t) = table {
                    if !this.seen.insert(t.clone()) {
                        return Ok(());
                    }
                    tables.push(t);
                }
                level.push(f);
                if level.len() as u64 > budget {
                    return Err(Error::BudgetExhausted(budget));
                }
                Ok(())
            };
            let semantic = self.dedup == Dedup::Semantic;
            if s == 1 {
                for atom in self.atoms.clone() {
                    let table = semantic.then(|| self.table_of(&atom));
                    push(self, atom, table, &mut level)?;
                }
            } else {
                // operands ordered by size, and by position within equal sizes
                for left in 1..s - 1 {
                    let right = s - 1 - left;
                    if left > right {
                        break;
                    }
                    for i in 0..self.levels[left].len() {
                        let start = if left == right { i } else { 0 };
                        for j in start..self.levels[right].len() {
                            for conj in [true, false] {
                                let (a, b) = (self.levels[left][i].clone(), self.levels[right][j].clone());
                                let table = semantic.then(|| {
                                    let (ta, tb) = (&self.tables[left][i], &self.tables[right][j]);
                                    ta.iter()
                                        .zip(tb)
                                        .map(|(x, y)| if conj { x & y } else { x | y })
                                        .collect()
                                });
                                let f = if conj { Formula::and(a, b) } else { Formula::or(a, b) };
                                push(self, f, table, &mut level)?;
                            }
                        }
                    }
                }
            }
            self.levels.push(level);
            self.tables.push(tables);
        }
        Ok(&self.levels[size])
    }
}
