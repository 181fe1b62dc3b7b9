use num_bigint::BigUint;
use num_traits::One;

use super::*;
use crate::game::lower_bound_profile;
use crate::structures::{enumerate_class_tuples, enumerate_profiles, Vocabulary};
use crate::synthesis::{upper_bound_d, upper_bound_profile};

fn prof(counts: &[usize]) -> TypeProfile {
    TypeProfile::new(counts.to_vec()).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn shannon_examples() {
    assert!(close(shannon_entropy(&prof(&[2, 2, 2, 2])).unwrap(), 2.0, 1e-12));
    assert_eq!(shannon_entropy(&prof(&[0, 0, 0, 7])).unwrap(), 0.0);
    let direct = -(0.25f64 * 0.25f64.log2()) - 0.75 * 0.75f64.log2();
    assert!(close(shannon_entropy(&prof(&[1, 3])).unwrap(), direct, 1e-12));
    assert!(close(direct, 0.811278, 1e-6));
    assert!(shannon_entropy(&prof(&[0, 0])).is_err());
}

#[test]
fn boltzmann_examples() {
    assert_eq!(boltzmann_entropy(&prof(&[9, 0, 0, 0])), 0.0);
    assert!(close(boltzmann_entropy(&prof(&[1, 1])), 1.0, 1e-12));
    assert!(close(boltzmann_entropy(&prof(&[2, 2])), 6f64.log2(), 1e-12));
}

#[test]
fn big_logs_are_accurate() {
    for x in [1u64, 2, 3, 1000, u64::MAX] {
        assert!(close(log2_big(&BigUint::from(x)), (x as f64).log2(), 1e-12));
    }
    let huge = BigUint::from(3u32) << 5000usize;
    assert!(close(log2_big(&huge), 5000.0 + 3f64.log2(), 1e-9));
    assert_eq!(log2_big(&BigUint::one()), 0.0);
}

#[test]
fn boltzmann_matches_log_factorials() {
    // independent route: sum of logs of factorials in floating point
    let lf = |m: usize| (1..=m).map(|i| (i as f64).log2()).sum::<f64>();
    for counts in [[3usize, 5, 0, 2], [10, 10, 10, 10], [1, 0, 0, 39]] {
        let n: usize = counts.iter().sum();
        let expected = lf(n) - counts.iter().map(|&c| lf(c)).sum::<f64>();
        assert!(close(boltzmann_entropy(&prof(&counts)), expected, 1e-9 * expected.max(1.0)));
    }
}

#[test]
fn gap_examples() {
    let r = entropy_gap_check(&prof(&[1, 1])).unwrap();
    assert!(close(r.gap, 0.5, 1e-12));
    assert!(close(r.gap_bound, 0.9405, 1e-4), "{}", r.gap_bound);
    assert!(r.holds() && r.all_positive);

    let r = entropy_gap_check(&prof(&[5, 5])).unwrap();
    let hb = 252f64.log2();
    assert!(close(r.gap, 1.0 - hb / 10.0, 1e-12));
    assert!(r.holds());
}

#[test]
fn gap_sweep_over_positive_profiles() {
    for t in [2usize, 4] {
        let vocab = Vocabulary::standard(t.trailing_zeros() as usize).unwrap();
        for n in 1..=30 {
            for p in enumerate_profiles(&vocab, n) {
                let r = entropy_gap_check(&p).unwrap();
                assert!(r.shannon >= 0.0 && r.shannon <= (t as f64).log2() + 1e-12);
                assert!(r.boltzmann >= 0.0);
                if r.all_positive {
                    assert!(r.holds(), "{p:?}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn normalised_entropies_converge() {
    let mut last = f64::INFINITY;
    for n in [10, 100, 1000, 10000] {
        let r = entropy_gap_check(&prof(&[n / 2, n / 2])).unwrap();
        let ratio = r.shannon / r.boltzmann_over_n;
        assert!(ratio > 1.0 && ratio < last, "n = {n}: {ratio}");
        last = ratio;
    }
    assert!(last - 1.0 < 0.02);
}

#[test]
fn thresholds_and_domains() {
    assert_eq!(f_threshold(4, 0.0).unwrap(), 0.0);
    assert!(f_threshold(4, 0.25).is_err() && f_threshold(4, -0.1).is_err());
    assert!(close(f_threshold(4, 0.2499999).unwrap(), 2.0, 1e-4));
    // f(p) is the entropy of (np, np, np, n(1-3p))
    assert!(close(f_threshold(4, 0.1).unwrap(), shannon_entropy(&prof(&[1, 1, 1, 7])).unwrap(), 1e-12));
    assert!(close(h_threshold(0.5).unwrap(), 1.0, 1e-12));
    assert!(close(h_threshold(0.25).unwrap(), shannon_entropy(&prof(&[0, 1, 3, 0])).unwrap(), 1e-12));
    assert!(h_threshold(0.6).is_err());
}

#[test]
fn curve_landmarks() {
    let vocab = Vocabulary::standard(2).unwrap();
    let n = 1000;
    let c = vocab.c_tau() as f64;
    let rows = fo_bound_curves(&vocab, n, 513).unwrap();
    let first = rows[0].clone();
    assert_eq!(first.f, Some(0.0));
    assert_eq!(first.lower, Some(-3.0));
    assert_eq!(first.clone().clipped().lower, Some(0.0));
    assert_eq!(first.upper, Some(3.0 * n as f64 + c));
    // p = 1/9 is where the descending branch meets the ceiling
    let p = 1.0 / 9.0;
    assert!(close(3.0 * n as f64 * (1.0 - 3.0 * p) + c, 2.0 * n as f64 + c, 1e-9));
    // past 1/t only the low-entropy branch remains
    let last = rows.last().unwrap();
    assert_eq!(last.p, 0.5);
    assert!(last.f.is_none() && last.h.is_some());
    assert_eq!(last.upper_low_entropy, Some(3.0 * n as f64 + c));
    assert!(fo_bound_curves(&vocab, n, 1).is_err());
}

#[test]
fn step_table_values() {
    let vocab = Vocabulary::standard(2).unwrap();
    let rows = fod_bound_steps(&vocab, 100, 10).unwrap();
    assert_eq!(rows.len(), 9);
    assert!(close(rows[0].upper_entropy, 100f64.log2(), 1e-12));
    let lower = [19.9, 36.6, 51.5, 65.0, 77.3, 88.8, 99.3, 109.2, 118.4];
    let upper = [6.6, 12.3, 17.3, 21.9, 26.2, 30.2, 33.9, 37.4, 40.8];
    for (row, (lo, up)) in rows.iter().zip(lower.iter().zip(upper)) {
        assert!(close(row.lower_entropy.unwrap(), *lo, 0.1), "{row:?}");
        assert!(close(row.upper_entropy, up, 0.1), "{row:?}");
        assert_eq!(row.lower, 3 * row.h as i64 - 3);
        assert_eq!(row.upper, 6 * row.h + 120);
    }
    assert!(fod_bound_steps(&vocab, 100, 1).is_err());
    // (t-1)h > n leaves the lower threshold undefined
    assert!(fod_bound_steps(&vocab, 5, 4).unwrap()[2].lower_entropy.is_none());
}

#[test]
fn region_examples() {
    let single = region_membership(&prof(&[0, 0, 0, 60])).unwrap();
    assert_eq!(single.shannon, 0.0);
    assert_eq!(single.lower_bound, 0);
    assert!(single.inside);
    let balanced = region_membership(&prof(&[15, 15, 15, 15])).unwrap();
    assert!(close(balanced.shannon, 2.0, 1e-12));
    assert_eq!(balanced.lower_bound, 42);
    assert_eq!(balanced.upper_bound, 45 + 120);
    assert!(balanced.inside);
}

#[test]
fn region_sweep_small() {
    let vocab = Vocabulary::standard(2).unwrap();
    for n in 1..=24 {
        for p in enumerate_profiles(&vocab, n) {
            let r = region_membership(&p).unwrap();
            assert!(r.inside, "{p:?}: {r:?}");
        }
    }
}

#[test]
fn sampled_thresholds_hold_on_real_profiles() {
    let vocab = Vocabulary::standard(2).unwrap();
    let n = 20;
    let rows = fo_bound_curves(&vocab, n, 257).unwrap();
    for p in enumerate_profiles(&vocab, n) {
        let hs = shannon_entropy(&p).unwrap();
        let (lo, up) = (lower_bound_profile(&p) as f64, upper_bound_profile(&p) as f64);
        for row in &rows {
            if let (Some(f), Some(l), Some(u)) = (row.f, row.lower, row.upper) {
                if hs > f {
                    assert!(lo > l && up < u, "{p:?} at p = {}", row.p);
                }
            }
            if let (Some(h), Some(u)) = (row.h, row.upper_low_entropy) {
                if hs < h {
                    assert!(up < u, "{p:?} at p = {}", row.p);
                }
            }
            assert!(up <= row.ceiling);
        }
    }
}

#[test]
fn class_entropy_steps_hold() {
    for k in 1..=2 {
        let vocab = Vocabulary::standard(k).unwrap();
        for n in 1..=20 {
            for d in 2..=5 {
                let steps = fod_bound_steps(&vocab, n, d).unwrap();
                for c in enumerate_class_tuples(&vocab, n, d) {
                    let hb = boltzmann_entropy_d(&c);
                    let lower = (3 * c.second_largest()) as i64 - 3;
                    for s in &steps {
                        // below t·h points the class (h, …, h, rest) is no
                        // longer the largest with second entry at most h
                        if n >= vocab.t() * s.h && s.lower_entropy.is_some_and(|e| hb > e) {
                            assert!(lower > s.lower, "{c:?}, h = {}", s.h);
                        }
                        if hb < s.upper_entropy {
                            assert!(upper_bound_d(&c) < s.upper, "{c:?}, h = {}", s.h);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn lower_step_needs_enough_points() {
    // n = 2, t = 2, d = 3, h = 2: the threshold is log 1 = 0, the class
    // (1, 1) has entropy 1, yet its second entry is not above h
    let vocab = Vocabulary::standard(1).unwrap();
    let steps = fod_bound_steps(&vocab, 2, 3).unwrap();
    let c = ClassTuple::new(3, 2, vec![1, 1]).unwrap();
    assert_eq!(steps[1].lower_entropy, Some(0.0));
    assert!(boltzmann_entropy_d(&c) > 0.0);
    assert!(c.second_largest() <= steps[1].h);
}
