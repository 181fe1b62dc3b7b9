use crate::error::{Error, Result};
use crate::game::lower_bound_profile;
use crate::structures::{multinomial, TypeProfile, Vocabulary};
use crate::synthesis::upper_bound_profile;

use super::{log2_big, shannon_entropy};

fn xlog(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Entropy of `(np, …, np, n(1-(t-1)p))`: `((t-1)p-1) log(1-(t-1)p) - (t-1)p log p`,
/// for `p ∈ [0, 1/t)`.
pub fn f_threshold(t: usize, p: f64) -> Result<f64> {
    if !(0.0..1.0 / t as f64).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} outside [0, 1/{t})")));
    }
    let s = (t - 1) as f64 * p;
    Ok(0.0 - xlog(1.0 - s) - (t - 1) as f64 * xlog(p))
}

/// Entropy of `(0, …, 0, np, n(1-p))`: `(p-1) log(1-p) - p log p`, for `p ∈ [0, 1/2]`.
pub fn h_threshold(p: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} outside [0, 1/2]")));
    }
    Ok(0.0 - xlog(1.0 - p) - xlog(p))
}

/// One sample of the curves bounding the (entropy, complexity) region.
/// Each curve pairs an entropy threshold with the bound it implies; entries
/// are `None` outside their domain of `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub p: f64,
    /// `f(p)`: above it, `3np - 3 < C < 3n(1-(t-1)p) + c_τ`
    pub f: Option<f64>,
    /// `h(p)`: below it, `C < 6np + c_τ`
    pub h: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub upper_low_entropy: Option<f64>,
    /// `2n + c_τ`, valid everywhere
    pub ceiling: f64,
}

impl CurveRow {
    pub fn clipped(mut self) -> Self {
        self.lower = self.lower.map(|x| x.max(0.0));
        self
    }
}

/// `samples` evenly spaced values of `p` over `[0, 1/2]`.
pub fn fo_bound_curves(vocab: &Vocabulary, n: usize, samples: usize) -> Result<Vec<CurveRow>> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    let (t, nf, c_tau) = (vocab.t(), n as f64, vocab.c_tau() as f64);
    Ok((0..samples)
        .map(|i| {
            let p = 0.5 * i as f64 / (samples - 1) as f64;
            let f = f_threshold(t, p).ok();
            let h = h_threshold(p).ok();
            CurveRow {
                p,
                f,
                h,
                lower: f.map(|_| 3.0 * nf * p - 3.0),
                upper: f.map(|_| 3.0 * nf * (1.0 - (t - 1) as f64 * p) + c_tau),
                upper_low_entropy: h.map(|_| 6.0 * nf * p + c_tau),
                ceiling: 2.0 * nf + c_tau,
            }
        })
        .collect())
}

/// Inverse of an increasing function on `[lo, hi]` by bisection.
fn inverse(g: impl Fn(f64) -> f64, y: f64, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The complexity range allowed at Shannon entropy `hs`, combining every
/// threshold: `lower < C < upper` (the ceiling is not strict).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub lower: f64,
    pub upper: f64,
}

pub fn envelope(t: usize, c_tau: usize, n: usize, hs: f64) -> Envelope {
    let (nf, c) = (n as f64, c_tau as f64);
    let tf = t as f64;
    let mut lower = 0.0f64;
    let mut upper = 2.0 * nf + c;
    // f rises from 0 to log t on [0, 1/t); every p with f(p) < hs applies
    if hs > 0.0 {
        let top = 1.0 / tf;
        let p = if hs >= tf.log2() {
            top
        } else {
            inverse(|p| f_threshold(t, p).expect("in domain"), hs, 0.0, top)
        };
        lower = lower.max(3.0 * nf * p - 3.0);
        upper = upper.min(3.0 * nf * (1.0 - (tf - 1.0) * p) + c);
    }
    // h rises from 0 to 1 on [0, 1/2]; every p with h(p) > hs applies
    if hs < 1.0 {
        let p = inverse(|p| h_threshold(p).expect("in domain"), hs, 0.0, 0.5);
        upper = upper.min(6.0 * nf * p + c);
    }
    Envelope { lower, upper }
}

/// Where a profile's proven bounds sit relative to the entropy region.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionDiagnostics {
    pub shannon: f64,
    /// `max(0, 3|π_{ℓ-1}| - 3)`
    pub lower_bound: usize,
    /// `min(3|π_ℓ|, 6|π_{ℓ-1}|) + c_τ`
    pub upper_bound: usize,
    pub envelope: Envelope,
    pub inside: bool,
}

/// Tolerance for the bisection and floating entropy.
const SLACK: f64 = 1e-9;

pub fn region_membership(p: &TypeProfile) -> Result<RegionDiagnostics> {
    let shannon = shannon_entropy(p)?;
    let t = p.t();
    let c_tau = 15 * t.trailing_zeros() as usize * t;
    let env = envelope(t, c_tau, p.n(), shannon);
    let lower_bound = lower_bound_profile(p);
    let upper_bound = upper_bound_profile(p);
    let scale = 1.0 + p.n() as f64;
    let inside =
        lower_bound as f64 >= env.lower - SLACK * scale && upper_bound as f64 <= env.upper + SLACK * scale;
    Ok(RegionDiagnostics {
        shannon,
        lower_bound,
        upper_bound,
        envelope: env,
        inside,
    })
}

/// One step of the `FO_d` bounds for `h ∈ 1..d`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRow {
    pub h: usize,
    /// `log multinomial(n; h, …, h, n-(t-1)h)`: above it, `C_d > 3h - 3`.
    /// `None` when `(t-1)h > n`.
    pub lower_entropy: Option<f64>,
    /// `log binomial(n, h)`: below it, `C_d < 6h + c_τ`
    pub upper_entropy: f64,
    pub lower: i64,
    pub upper: usize,
}

pub fn fod_bound_steps(vocab: &Vocabulary, n: usize, d: usize) -> Result<Vec<StepRow>> {
    if d < 2 {
        return Err(Error::InvalidArgument("steps need d >= 2".into()));
    }
    let t = vocab.t();
    (1..d)
        .map(|h| {
            let lower_entropy = (n >= (t - 1) * h)
                .then(|| {
                    let mut counts = vec![h; t - 1];
                    counts.push(n - (t - 1) * h);
                    multinomial(n, &counts).map(|m| log2_big(&m))
                })
                .transpose()?;
            let upper_entropy = if h <= n {
                log2_big(&multinomial(n, &[h, n - h])?)
            } else {
                f64::NEG_INFINITY
            };
            Ok(StepRow {
                h,
                lower_entropy,
                upper_entropy,
                lower: 3 * h as i64 - 3,
                upper: 6 * h + vocab.c_tau(),
            })
        })
        .collect()
}
