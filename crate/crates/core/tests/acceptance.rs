//! The ten acceptance criteria. Each prints one PASS/FAIL line with the
//! figures it measured; the process fails if any criterion does.

use std::ops::ControlFlow;
use std::process::ExitCode;
use std::thread;

use fo_describe::entropy::{
    boltzmann_entropy, boltzmann_entropy_d, entropy_gap_check, fo_bound_curves, fod_bound_steps, region_membership,
    shannon_entropy,
};
use fo_describe::game::{decide, lower_bound_profile, lower_bound_witness, GamePosition, ModelSet, Player};
use fo_describe::oracle::{exact_c, for_each_sentence, min_separating_sentence, Dedup, EnumerationBudget};
use fo_describe::semantics::{defines, defines_class, ProfileChecker};
use fo_describe::structures::{
    enumerate_class_tuples, enumerate_profiles, is_balanced, is_balanced_with, representative, sample_uniform,
    BalanceRule, TypeProfile, UnaryStructure, Vocabulary,
};
use fo_describe::synthesis::{synthesize_class, synthesize_full, upper_bound, upper_bound_d, upper_bound_profile};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, failure: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(failure())
    }
}

fn vocab(k: usize) -> Vocabulary {
    Vocabulary::standard(k).unwrap()
}

fn synthesis_soundness() -> Outcome {
    let mut checked = 0;
    let mut at_k2_n8 = 0;
    for k in 1..=2 {
        let v = vocab(k);
        for n in 1..=8 {
            for p in enumerate_profiles(&v, n) {
                let s = representative(&v, &p).unwrap();
                let f = synthesize_full(&s);
                check(defines(&s, &f).unwrap(), || format!("{p:?} not defined"))?;
                check(f.size() <= upper_bound(&s), || {
                    format!("{p:?}: size {} > {}", f.size(), upper_bound(&s))
                })?;
                checked += 1;
                at_k2_n8 += (k == 2 && n == 8) as usize;
            }
        }
    }
    Ok(format!("{checked} profiles ({at_k2_n8} at k=2, n=8)"))
}

fn class_synthesis_soundness() -> Outcome {
    let (mut checked, mut six_branch) = (0, 0);
    for k in 1..=2 {
        let v = vocab(k);
        for n in 1..=8 {
            for d in 1..=4 {
                for c in enumerate_class_tuples(&v, n, d) {
                    let syn = synthesize_class(&c);
                    let f = &syn.formula;
                    check(defines_class(&c, f).unwrap(), || format!("{c:?} not defined"))?;
                    check(f.qrank() <= d, || format!("{c:?}: qrank {}", f.qrank()))?;
                    let general = 3 * d + 3 * c.highest_below_d() + v.c_tau();
                    check(f.size() <= general, || format!("{c:?}: size {} > {general}", f.size()))?;
                    if c.m().iter().filter(|&&x| x == d).count() == 1 {
                        let small = 6 * c.second_largest() + v.c_tau();
                        check(f.size() <= small, || format!("{c:?}: size {} > {small}", f.size()))?;
                        six_branch += (small < general) as usize;
                    }
                    check(f.size() <= upper_bound_d(&c), || format!("{c:?}: above upper_bound_d"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} classes, 6m+c_τ branch binding in {six_branch}"))
}

fn oracle_bracketing() -> Outcome {
    let v = vocab(1);
    let budget = EnumerationBudget::with_max_size(8);
    let mut seen = Vec::new();
    for n in 1..=3 {
        for p in enumerate_profiles(&v, n) {
            let s = representative(&v, &p).unwrap();
            let min = exact_c(&s, &budget).unwrap().ok_or_else(|| format!("{p:?}: C > 8"))?;
            let (lo, hi) = (lower_bound_profile(&p), synthesize_full(&s).size());
            check(lo <= min.size && min.size <= hi, || format!("{p:?}: C = {} outside [{lo}, {hi}]", min.size))?;
            seen.push(format!("{:?}={}", p.counts(), min.size));
        }
    }
    Ok(seen.join(" "))
}

fn all_structures(v: &Vocabulary, n: usize) -> Vec<UnaryStructure> {
    let t = v.t();
    (0..t.pow(n as u32))
        .map(|mut code| {
            let types = (0..n)
                .map(|_| {
                    let ty = code % t;
                    code /= t;
                    ty
                })
                .collect();
            UnaryStructure::new(v.clone(), types).unwrap()
        })
        .collect()
}

fn small_sets(items: &[UnaryStructure]) -> Vec<Vec<UnaryStructure>> {
    let mut out: Vec<Vec<UnaryStructure>> = items.iter().map(|s| vec![s.clone()]).collect();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            out.push(vec![items[i].clone(), items[j].clone()]);
        }
    }
    out
}

fn game_formula_equivalence() -> Outcome {
    let v = vocab(1);
    let (mut positions, mut s_wins) = (0, 0);
    for n in 1..=2 {
        let sets = small_sets(&all_structures(&v, n));
        for a in &sets {
            for b in &sets {
                let (ma, mb) = (ModelSet::sentences_over(a).unwrap(), ModelSet::sentences_over(b).unwrap());
                for q in 0..=3 {
                    let budget = EnumerationBudget::with_max_size(6).max_quantifiers(q);
                    let least = min_separating_sentence(&v, a, b, &budget).unwrap().map(|m| m.size);
                    for r in 1..=6u32 {
                        let game = decide(&GamePosition::start(r, q as u32, ma.clone(), mb.clone())).unwrap();
                        let oracle = least.is_some_and(|m| m <= r as usize);
                        check((game.winner == Player::S) == oracle, || {
                            format!("n={n} A={a:?} B={b:?} r={r} q={q}: game {:?}, oracle {least:?}", game.winner)
                        })?;
                        positions += 1;
                        s_wins += oracle as usize;
                    }
                }
            }
        }
    }
    Ok(format!("{positions} positions agree ({s_wins} won by S)"))
}

fn quantifier_floor() -> Outcome {
    let v = vocab(1);
    let mut report = Vec::new();
    for n in 1..=5 {
        for p in enumerate_profiles(&v, n) {
            if p.second_largest() != 2 {
                continue;
            }
            let m = representative(&v, &p).unwrap();
            let w = lower_bound_witness(&m).witness.unwrap();
            let (pm, pw) = (m.profile(), w.profile());
            let mut separating = 0;
            let budget = EnumerationBudget::with_max_size(7);
            for_each_sentence(&v, &budget, Dedup::Semantic, |pf| {
                let c = ProfileChecker::new(&pf.to_formula()).unwrap();
                if c.holds(&pm) && !c.holds(&pw) {
                    separating += 1;
                    if pf.prefix.len() < 2 {
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            })
            .unwrap()
            .then_some(())
            .ok_or_else(|| format!("{:?} vs {:?}: a one-quantifier sentence separates", pm.counts(), pw.counts()))?;
            let least = min_separating_sentence(&v, std::slice::from_ref(&m), std::slice::from_ref(&w), &budget)
                .unwrap()
                .map(|m| (m.size, m.witness.display(&v).to_string()));
            let (a, b) = (ModelSet::sentences_over(&[m]).unwrap(), ModelSet::sentences_over(&[w]).unwrap());
            for r in 1..=10 {
                let d = decide(&GamePosition::start(r, 1, a.clone(), b.clone())).unwrap();
                check(d.winner == Player::D, || format!("{:?}: S wins FS({r}, 1)", pm.counts()))?;
            }
            report.push(format!("{:?}->{:?} ({separating} separators <= 7, least {least:?})", pm.counts(), pw.counts()));
        }
    }
    Ok(report.join("; "))
}

fn balancedness() -> Outcome {
    let mut report = Vec::new();
    for (n, k) in [(100, 1), (100, 2), (400, 2)] {
        let v = vocab(k);
        let samples = 10_000u64;
        let (mut ok, mut printed) = (0, 0);
        for seed in 0..samples {
            let s = sample_uniform(&v, n, seed).unwrap();
            ok += is_balanced(&s).unwrap() as u64;
            printed += is_balanced_with(&s, BalanceRule::Printed).unwrap() as u64;
        }
        let frac = ok as f64 / samples as f64;
        let floor = 1.0 - (1u64 << (k + 1)) as f64 / n as f64;
        check(frac >= floor, || format!("(n={n}, k={k}): {frac} < {floor}"))?;
        report.push(format!(
            "(n={n},k={k}) {frac:.4} >= {floor:.4} [printed closed form: {:.4}]",
            printed as f64 / samples as f64
        ));
    }
    Ok(report.join("; "))
}

/// Mean synthesized size and mean lower bound over seeded samples.
fn means(n: usize, samples: u64) -> (f64, f64) {
    let v = vocab(1);
    let (mut size, mut lower) = (0usize, 0usize);
    for seed in 0..samples {
        let s = sample_uniform(&v, n, seed).unwrap();
        size += synthesize_full(&s).size();
        lower += lower_bound_profile(&s.profile());
    }
    (size as f64 / samples as f64, lower as f64 / samples as f64)
}

fn expected_complexity() -> Outcome {
    let (size, lower) = means(1000, 10_000);
    for (name, x) in [("size", size), ("lower", lower)] {
        check((x - 1500.0).abs() <= 150.0, || format!("mean {name} {x} not within 10% of 1500"))?;
    }
    let gaps: Vec<f64> = [500, 1000, 2000]
        .into_iter()
        .map(|n| {
            let (s, l) = means(n, 2000);
            (s - l) / n as f64
        })
        .collect();
    check(gaps.windows(2).all(|w| w[1] < w[0]), || format!("relative gaps {gaps:?} do not shrink"))?;
    Ok(format!(
        "n=1000: mean size {size:.1}, mean lower {lower:.1}; (size-lower)/n at 500/1000/2000: {:.4} {:.4} {:.4}",
        gaps[0], gaps[1], gaps[2]
    ))
}

fn entropy_identity() -> Outcome {
    let mut checked = 0;
    for k in [1, 2] {
        let v = vocab(k);
        for n in 1..=30 {
            for p in enumerate_profiles(&v, n) {
                let r = entropy_gap_check(&p).unwrap();
                if r.all_positive {
                    check(r.holds(), || format!("{p:?}: gap {} >= {}", r.gap, r.gap_bound))?;
                    checked += 1;
                }
            }
        }
    }
    let r = entropy_gap_check(&TypeProfile::new(vec![5000, 5000]).unwrap()).unwrap();
    let ratio = r.shannon / r.boltzmann_over_n;
    check((ratio - 1.0).abs() <= 0.02, || format!("ratio {ratio} at n = 10^4"))?;
    Ok(format!("{checked} positive profiles, no violation; H_S/(H_B/n) = {ratio:.5} at n=10^4"))
}

fn region_exclusion() -> Outcome {
    let v = vocab(2);
    let n = 60;
    let rows = fo_bound_curves(&v, n, 512).unwrap();
    let mut profiles = 0;
    for p in enumerate_profiles(&v, n) {
        let r = region_membership(&p).unwrap();
        check(r.inside, || format!("{p:?} outside: {r:?}"))?;
        let hs = shannon_entropy(&p).unwrap();
        let (lo, up) = (lower_bound_profile(&p) as f64, upper_bound_profile(&p) as f64);
        for row in &rows {
            if let (Some(f), Some(l), Some(u)) = (row.f, row.lower, row.upper) {
                if hs > f {
                    check(lo > l && up < u, || format!("{p:?} breaks the f-threshold at p = {}", row.p))?;
                }
            }
            if let (Some(h), Some(u)) = (row.h, row.upper_low_entropy) {
                if hs < h {
                    check(up < u, || format!("{p:?} breaks the h-threshold at p = {}", row.p))?;
                }
            }
            check(up <= row.ceiling, || format!("{p:?} above the ceiling"))?;
        }
        profiles += 1;
    }

    let (n, d) = (20, 5);
    let steps = fod_bound_steps(&v, n, d).unwrap();
    let mut classes = 0;
    for c in enumerate_class_tuples(&v, n, d) {
        let hb = boltzmann_entropy_d(&c);
        for s in &steps {
            if s.lower_entropy.is_some_and(|e| hb > e) {
                let lower = (3 * c.second_largest()) as i64 - 3;
                check(lower > s.lower, || format!("{c:?}: entropy above step {} but bound {lower}", s.h))?;
            }
            if hb < s.upper_entropy {
                check(upper_bound_d(&c) < s.upper, || format!("{c:?}: entropy below step {}", s.h))?;
            }
        }
        classes += 1;
    }
    Ok(format!("{profiles} profiles at n=60 inside the region; {classes} classes at n=20, d=5 respect the steps"))
}

fn landmarks() -> Outcome {
    let v = vocab(1);
    let budget = EnumerationBudget::with_max_size(4);
    for n in 1..=8 {
        let all_p = representative(&v, &TypeProfile::new(vec![0, n]).unwrap()).unwrap();
        let c = exact_c(&all_p, &budget).unwrap().map(|m| m.size);
        check(c == Some(2), || format!("all-P model of size {n}: C = {c:?}"))?;
    }
    for k in 1..=3 {
        for n in [1, 10, 1000] {
            let mut counts = vec![0; 1 << k];
            counts[0] = n;
            let h = boltzmann_entropy(&TypeProfile::new(counts).unwrap());
            check(h == 0.0, || format!("single type, k={k}, n={n}: H_B = {h}"))?;
        }
    }
    Ok("C = 2 for the all-P model at n = 1..=8; H_B = 0 for single-type models".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("synthesis soundness", synthesis_soundness),
        ("bounded-rank synthesis soundness", class_synthesis_soundness),
        ("oracle bracketing", oracle_bracketing),
        ("game-formula equivalence", game_formula_equivalence),
        ("quantifier floor", quantifier_floor),
        ("balancedness", balancedness),
        ("expected complexity trend", expected_complexity),
        ("entropy identity", entropy_identity),
        ("region exclusion", region_exclusion),
        ("exact landmarks", landmarks),
    ];
    let results: Vec<Outcome> = thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, run)| {
                thread::Builder::new()
                    .stack_size(512 << 20)
                    .spawn_scoped(scope, run)
                    .unwrap()
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".into())))
            .collect()
    });
    let mut failed = 0;
    for (i, ((name, _), result)) in criteria.iter().zip(&results).enumerate() {
        match result {
            Ok(detail) => println!("acceptance {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
