use num_bigint::BigUint;
use num_traits::One;

use super::{ClassTuple, TypeProfile, Vocabulary};
use crate::error::{Error, Result};

/// Weak compositions of `n` into `t` parts in lexicographic order.
#[derive(Clone, Debug)]
pub struct Profiles {
    current: Option<Vec<usize>>,
}

impl Profiles {
    pub fn new(t: usize, n: usize) -> Self {
        let mut first = vec![0; t];
        if let Some(last) = first.last_mut() {
            *last = n;
        }
        Self {
            current: (t > 0).then_some(first),
        }
    }
}

impl Iterator for Profiles {
    type Item = TypeProfile;

    fn next(&mut self) -> Option<TypeProfile> {
        let current = self.current.take()?;
        let t = current.len();
        // Bump the rightmost position that still has mass to its right.
        let mut next = current.clone();
        let mut tail = next[t - 1];
        let mut j = t - 1;
        while j > 0 {
            j -= 1;
            if tail > 0 {
                next[j] += 1;
                next[t - 1] = tail - 1;
                for x in &mut next[j + 1..t - 1] {
                    *x = 0;
                }
                self.current = Some(next);
                break;
            }
            tail += next[j];
        }
        Some(TypeProfile { counts: current })
    }
}

/// All type profiles of size `n` over `vocab`, lexicographically ordered.
pub fn enumerate_profiles(vocab: &Vocabulary, n: usize) -> Profiles {
    Profiles::new(vocab.t(), n)
}

/// Every valid class tuple for domain size `n` and threshold `d`.
#[derive(Clone, Debug)]
pub struct ClassTuples {
    d: usize,
    n: usize,
    digits: Option<Vec<usize>>,
}

impl Iterator for ClassTuples {
    type Item = ClassTuple;

    fn next(&mut self) -> Option<ClassTuple> {
        loop {
            let digits = self.digits.as_mut()?;
            let candidate = digits.clone();
            // odometer over [0, d]^t, last position fastest
            let mut i = digits.len();
            loop {
                if i == 0 {
                    self.digits = None;
                    break;
                }
                i -= 1;
                if digits[i] < self.d {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 0;
            }
            if let Ok(c) = ClassTuple::new(self.d, self.n, candidate) {
                return Some(c);
            }
        }
    }
}

pub fn enumerate_class_tuples(vocab: &Vocabulary, n: usize, d: usize) -> ClassTuples {
    ClassTuples {
        d,
        n,
        digits: (d > 0).then(|| vec![0; vocab.t()]),
    }
}

/// `n! / (n_1! ... n_t!)` computed exactly as a product of binomials.
pub fn multinomial(n: usize, counts: &[usize]) -> Result<BigUint> {
    let sum: usize = counts.iter().sum();
    if sum != n {
        return Err(Error::ProfileSum {
            expected: n,
            actual: sum,
        });
    }
    let mut acc = BigUint::one();
    let mut filled = 0usize;
    for &c in counts {
        // multiply by binomial(filled + c, c), one factor at a time to stay exact
        for i in 1..=c {
            acc *= filled + i;
            acc /= i;
        }
        filled += c;
    }
    Ok(acc)
}

/// Number of structures on a fixed `n`-element domain whose class tuple is `c`.
pub fn class_size(c: &ClassTuple) -> BigUint {
    let d = c.d();
    let open: Vec<usize> = (0..c.t()).filter(|&j| c.m()[j] == d).collect();
    let slack = c.n() - c.m().iter().sum::<usize>();
    let mut total = BigUint::default();
    let mut counts = c.m().to_vec();
    if open.is_empty() {
        // validity forces slack == 0 here
        return multinomial(c.n(), &counts).expect("tuple sums to n");
    }
    for extra in Profiles::new(open.len(), slack) {
        for (&j, &e) in open.iter().zip(extra.counts()) {
            counts[j] = d + e;
        }
        total += multinomial(c.n(), &counts).expect("completion sums to n");
    }
    total
}
