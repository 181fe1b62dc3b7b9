//! Unary relational structures and the count vectors that classify them.
//!
//! A structure over `k` unary predicates is stored as one type index per
//! domain element. Bit `i` of a type index is set iff the element belongs to
//! the `i`-th predicate, so there are `t = 2^k` types in total.

mod counting;
mod ingest;
mod random;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use counting::{
    class_size, enumerate_class_tuples, enumerate_profiles, multinomial, ClassTuples, Profiles,
};
pub use ingest::{ingest_csv, ingest_csv_path};
pub use random::{
    balance_threshold, is_balanced, is_balanced_with, printed_balance_threshold, sample_uniform, BalanceRule,
};

/// Largest supported number of predicates; keeps `2^k` comfortably indexable.
pub const MAX_PREDICATES: usize = 16;

const STANDARD_NAMES: [&str; 8] = ["P", "Q", "R", "S", "T", "U", "V", "W"];

/// An ordered list of unary predicate names. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vocabulary(Arc<[String]>);

impl Vocabulary {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidVocabulary("at least one predicate is required".into()));
        }
        if names.len() > MAX_PREDICATES {
            return Err(Error::InvalidVocabulary(format!(
                "{} predicates given, at most {MAX_PREDICATES} supported",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidVocabulary(format!(
                    "predicate name {name:?} is not an identifier"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidVocabulary(format!("duplicate predicate {name:?}")));
            }
        }
        Ok(Self(names.into()))
    }

    /// `P`, `Q`, `R`, ... for the first eight predicates, then `P9`, `P10`, ...
    pub fn standard(k: usize) -> Result<Self> {
        Self::new((0..k).map(|i| match STANDARD_NAMES.get(i) {
            Some(name) => name.to_string(),
            None => format!("P{}", i + 1),
        }))
    }

    pub fn predicates(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|p| p == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    /// Number of predicates `k`.
    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Number of types `t = 2^k`.
    pub fn t(&self) -> usize {
        1 << self.k()
    }

    /// The constant `15 k 2^k` absorbing vocabulary overhead in the size bounds.
    pub fn c_tau(&self) -> usize {
        15 * self.k() * self.t()
    }

    /// Whether predicate `p` holds for elements of type `ty`.
    pub fn type_has(&self, ty: usize, p: usize) -> bool {
        ty >> p & 1 == 1
    }
}

impl fmt::Debug for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite structure with domain `{0, .., n-1}`; element `i` realizes type `type_of[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnaryStructure {
    vocab: Vocabulary,
    type_of: Vec<usize>,
}

impl UnaryStructure {
    pub fn new(vocab: Vocabulary, type_of: Vec<usize>) -> Result<Self> {
        if type_of.is_empty() {
            return Err(Error::InvalidStructure("domain must be nonempty".into()));
        }
        let t = vocab.t();
        if let Some((i, &ty)) = type_of.iter().enumerate().find(|(_, &ty)| ty >= t) {
            return Err(Error::InvalidStructure(format!(
                "element {i} has type index {ty}, but only {t} types exist"
            )));
        }
        Ok(Self { vocab, type_of })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn n(&self) -> usize {
        self.type_of.len()
    }

    pub fn type_of(&self) -> &[usize] {
        &self.type_of
    }

    pub fn type_at(&self, element: usize) -> usize {
        self.type_of[element]
    }

    pub fn holds(&self, predicate: usize, element: usize) -> bool {
        self.vocab.type_has(self.type_of[element], predicate)
    }

    pub fn profile(&self) -> TypeProfile {
        profile_of(self)
    }

    /// The structure with `element` retyped; used for the lower-bound witness.
    pub fn with_type(&self, element: usize, ty: usize) -> Result<Self> {
        let mut type_of = self.type_of.clone();
        type_of[element] = ty;
        Self::new(self.vocab.clone(), type_of)
    }
}

impl fmt::Debug for UnaryStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnaryStructure(k={}, types={:?})", self.vocab.k(), self.type_of)
    }
}

/// `counts[j]` is the number of elements realizing type `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeProfile {
    counts: Vec<usize>,
}

impl TypeProfile {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() || !counts.len().is_power_of_two() || counts.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a profile needs 2^k entries with k >= 1, got {}",
                counts.len()
            )));
        }
        Ok(Self { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn t(&self) -> usize {
        self.counts.len()
    }

    pub fn n(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Realized types in ascending order of count, ties by type index.
    pub fn realized_ascending(&self) -> Vec<usize> {
        let mut types: Vec<usize> = (0..self.t()).filter(|&j| self.counts[j] > 0).collect();
        types.sort_by_key(|&j| (self.counts[j], j));
        types
    }

    /// `|π_ℓ|`, the count of the largest realized type.
    pub fn largest(&self) -> usize {
        self.realized_ascending().last().map_or(0, |&j| self.counts[j])
    }

    /// `|π_{ℓ-1}|`, the count of the second largest realized type (0 if only one is realized).
    pub fn second_largest(&self) -> usize {
        let types = self.realized_ascending();
        if types.len() < 2 {
            0
        } else {
            self.counts[types[types.len() - 2]]
        }
    }
}

impl fmt::Display for TypeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Identifies a class of the counting equivalence with threshold `d`.
///
/// Entries below `d` are exact counts; an entry equal to `d` means "at least `d`".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassTuple {
    d: usize,
    n: usize,
    m: Vec<usize>,
}

impl ClassTuple {
    pub fn new(d: usize, n: usize, m: Vec<usize>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidClassTuple("threshold d must be positive".into()));
        }
        if n == 0 {
            return Err(Error::InvalidClassTuple("domain size n must be positive".into()));
        }
        if m.len() < 2 || !m.len().is_power_of_two() {
            return Err(Error::InvalidClassTuple(format!(
                "tuple length {} is not 2^k with k >= 1",
                m.len()
            )));
        }
        if let Some(&x) = m.iter().find(|&&x| x > d) {
            return Err(Error::InvalidClassTuple(format!("entry {x} exceeds d = {d}")));
        }
        let sum: usize = m.iter().sum();
        if sum > n {
            return Err(Error::InvalidClassTuple(format!("entries sum to {sum} > n = {n}")));
        }
        if sum < n && !m.contains(&d) {
            return Err(Error::InvalidClassTuple(format!(
                "entries sum to {sum} < n = {n} but none equals d = {d}"
            )));
        }
        Ok(Self { d, n, m })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn t(&self) -> usize {
        self.m.len()
    }

    /// True when the class is a single isomorphism class.
    pub fn is_isomorphism_class(&self) -> bool {
        self.m.iter().sum::<usize>() == self.n
    }

    /// Entries in ascending order (the `m_1 <= .. <= m_t` view).
    pub fn sorted(&self) -> Vec<usize> {
        let mut s = self.m.clone();
        s.sort_unstable();
        s
    }

    /// `m_{t-1}`: the second largest entry.
    pub fn second_largest(&self) -> usize {
        let s = self.sorted();
        s[s.len() - 2]
    }

    /// Highest entry strictly below `d`, or 0 if there is none.
    pub fn highest_below_d(&self) -> usize {
        self.m.iter().copied().filter(|&x| x < self.d).max().unwrap_or(0)
    }

    /// The profile of a class member with as many points as possible in the
    /// largest type (ties broken towards the higher type index).
    pub fn maximal_representative_profile(&self) -> TypeProfile {
        let mut order: Vec<usize> = (0..self.t()).collect();
        order.sort_by_key(|&j| (self.m[j], j));
        let largest = *order.last().expect("t >= 2");
        let mut counts = self.m.clone();
        let rest: usize = counts.iter().enumerate().filter(|&(j, _)| j != largest).map(|(_, &c)| c).sum();
        counts[largest] = self.n - rest;
        TypeProfile { counts }
    }
}

impl fmt::Display for ClassTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.m.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ") d={} n={}", self.d, self.n)
    }
}

pub fn profile_of(s: &UnaryStructure) -> TypeProfile {
    let mut counts = vec![0; s.vocab.t()];
    for &ty in &s.type_of {
        counts[ty] += 1;
    }
    TypeProfile { counts }
}

pub fn class_tuple_of(s: &UnaryStructure, d: usize) -> Result<ClassTuple> {
    class_tuple_of_profile(&profile_of(s), d)
}

pub fn class_tuple_of_profile(p: &TypeProfile, d: usize) -> Result<ClassTuple> {
    if d == 0 {
        return Err(Error::InvalidArgument("threshold d must be positive".into()));
    }
    let m = p.counts.iter().map(|&c| c.min(d)).collect();
    Ok(ClassTuple { d, n: p.n(), m })
}

/// Canonical structure realizing `p`: all type-0 elements first, then type 1, and so on.
pub fn representative(vocab: &Vocabulary, p: &TypeProfile) -> Result<UnaryStructure> {
    if p.t() != vocab.t() {
        return Err(Error::InvalidArgument(format!(
            "profile has {} entries but the vocabulary has {} types",
            p.t(),
            vocab.t()
        )));
    }
    let type_of = p
        .counts
        .iter()
        .enumerate()
        .flat_map(|(j, &c)| std::iter::repeat_n(j, c))
        .collect();
    UnaryStructure::new(vocab.clone(), type_of)
}
