use anyhow::Result;
use fo_describe::logic::{parse, Formula};
use fo_describe::structures::Vocabulary;

use crate::Unverified;

pub mod complexity;
pub mod entropy;
pub mod expected;
pub mod game;
pub mod plot;
pub mod sample;
pub mod synthesize;

/// Profiles of size `n` over `t` types, saturating at `u64::MAX`.
pub fn profile_count(n: usize, t: usize) -> u64 {
    // binomial(n + t - 1, t - 1), built up exactly one factor at a time
    let mut acc: u128 = 1;
    for i in 1..t as u128 {
        acc = acc * (n as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Prints `f` and checks the text parses back to the same formula.
pub fn printed(f: &Formula, vocab: &Vocabulary) -> Result<String> {
    let text = f.display(vocab).to_string();
    match parse(&text, vocab) {
        Ok(g) if g == *f => Ok(text),
        Ok(_) => Err(Unverified(format!("{text} parses to a different formula")).into()),
        Err(e) => Err(Unverified(format!("{text} does not parse: {e}")).into()),
    }
}
