use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{UnaryStructure, Vocabulary};
use crate::error::{Error, Result};

/// A uniformly random structure: every element draws its type independently
/// and uniformly from the `2^k` types. Deterministic in `seed`.
pub fn sample_uniform(vocab: &Vocabulary, n: usize, seed: u64) -> Result<UnaryStructure> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = vocab.t();
    let type_of = (0..n).map(|_| rng.gen_range(0..t)).collect();
    UnaryStructure::new(vocab.clone(), type_of)
}

/// Which discrepancy threshold decides balancedness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BalanceRule {
    /// `δμ` with `δ` solving `2 exp(-δ²μ/3) = 2/n` for `μ = n/2^k`:
    /// `sqrt(3 · n ln n / 2^k)`. Guarantees the `1 - 2^{k+1}/n` floor.
    #[default]
    Chernoff,
    /// The closed form `sqrt(3) / (2^k sqrt(2^k)) · sqrt(n ln n)`. Equals the
    /// Chernoff rule only for `k = 0`; for `k >= 1` it is smaller by `2^k`.
    Printed,
}

/// Chernoff-consistent discrepancy allowance for a size-`n` structure over `k` predicates.
pub fn balance_threshold(n: usize, k: usize) -> f64 {
    let n = n as f64;
    let t = (1u64 << k) as f64;
    (3.0 * n * n.ln() / t).sqrt()
}

pub fn printed_balance_threshold(n: usize, k: usize) -> f64 {
    let n = n as f64;
    let t = (1u64 << k) as f64;
    3f64.sqrt() / (t * t.sqrt()) * (n.ln() * n).sqrt()
}

/// Every type count lies within the Chernoff threshold of `n / 2^k` (inclusive).
pub fn is_balanced(s: &UnaryStructure) -> Result<bool> {
    is_balanced_with(s, BalanceRule::Chernoff)
}

pub fn is_balanced_with(s: &UnaryStructure, rule: BalanceRule) -> Result<bool> {
    let n = s.n();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "balancedness needs n >= 2, got n = {n}"
        )));
    }
    let k = s.vocab().k();
    let threshold = match rule {
        BalanceRule::Chernoff => balance_threshold(n, k),
        BalanceRule::Printed => printed_balance_threshold(n, k),
    };
    let expected = n as f64 / s.vocab().t() as f64;
    Ok(s.profile()
        .counts()
        .iter()
        .all(|&c| (c as f64 - expected).abs() <= threshold))
}
