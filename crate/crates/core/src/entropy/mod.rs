//! Shannon and Boltzmann entropy, and how they bound description complexity.
//!
//! All logarithms are base 2.

use std::f64::consts::{E, PI};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::structures::{class_size, multinomial, ClassTuple, TypeProfile};

mod bounds;

pub use bounds::{
    envelope, f_threshold, fo_bound_curves, fod_bound_steps, h_threshold, region_membership, CurveRow, Envelope,
    RegionDiagnostics, StepRow,
};

/// `log2` of a big integer: exact bits above 2^64 are shifted out first, so
/// the result carries `f64` precision at any magnitude.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().expect("fits in 64 bits");
    top.log2() + shift as f64
}

/// `H_S = Σ -(|π_i|/n) log(|π_i|/n)`, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &TypeProfile) -> Result<f64> {
    let n = p.n();
    if n == 0 {
        return Err(Error::InvalidArgument("entropy of an empty profile".into()));
    }
    Ok(p.counts()
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let q = c as f64 / n as f64;
            -q * q.log2()
        })
        .sum::<f64>()
        .max(0.0))
}

/// `H_B = log |ℳ|` for the isomorphism class of the profile.
pub fn boltzmann_entropy(p: &TypeProfile) -> f64 {
    log2_big(&multinomial(p.n(), p.counts()).expect("profile counts sum to n"))
}

/// `H_B^d`: log of the number of structures in the `≡_d` class.
pub fn boltzmann_entropy_d(c: &ClassTuple) -> f64 {
    log2_big(&class_size(c))
}

/// Right-hand side of `H_S - H_B/n < bound`:
/// `(t-1) log(√(2πn))/n - log(e)/12n² + t log(e)/(12n² + n)`.
pub fn gap_bound(n: usize, t: usize) -> f64 {
    let (n, t) = (n as f64, t as f64);
    (t - 1.0) * (2.0 * PI * n).sqrt().log2() / n - E.log2() / (12.0 * n * n) + t * E.log2() / (12.0 * n * n + n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub shannon: f64,
    pub boltzmann: f64,
    pub boltzmann_over_n: f64,
    pub gap: f64,
    pub gap_bound: f64,
    /// every type is realized; the Stirling estimate behind the bound needs it
    pub all_positive: bool,
}

impl EntropyReport {
    pub fn holds(&self) -> bool {
        self.gap < self.gap_bound
    }
}

pub fn entropy_gap_check(p: &TypeProfile) -> Result<EntropyReport> {
    let shannon = shannon_entropy(p)?;
    let boltzmann = boltzmann_entropy(p);
    let n = p.n();
    let boltzmann_over_n = boltzmann / n as f64;
    Ok(EntropyReport {
        shannon,
        boltzmann,
        boltzmann_over_n,
        gap: shannon - boltzmann_over_n,
        gap_bound: gap_bound(n, p.t()),
        all_positive: p.counts().iter().all(|&c| c > 0),
    })
}

#[cfg(test)]
mod tests;
