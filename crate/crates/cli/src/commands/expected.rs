use anyhow::{bail, Result};
use clap::Args;
use fo_describe::entropy::log2_big;
use fo_describe::game::lower_bound_profile;
use fo_describe::oracle::{exact_c, EnumerationBudget};
use fo_describe::structures::{enumerate_profiles, is_balanced, multinomial, representative, sample_uniform, Vocabulary};
use fo_describe::synthesis::upper_bound_profile;

use crate::report::{num, Report};
use crate::{Common, OverBudget};

#[derive(Debug, Args)]
pub struct ExpectedArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sum over all profiles weighted by their probability instead of sampling
    #[arg(long)]
    exact: bool,
    /// With --exact: also average the exact complexity (tiny n only)
    #[arg(long, requires = "exact")]
    oracle: bool,
    #[arg(long, default_value_t = 8)]
    budget_size: usize,
}

pub fn run(args: ExpectedArgs, common: &Common) -> Result<()> {
    if args.n < 2 {
        bail!("expected complexity needs n >= 2");
    }
    let vocab = Vocabulary::standard(args.k)?;
    let (n, t) = (args.n, vocab.t());
    let target = 3.0 * n as f64 / t as f64;
    let mut report = Report::default();
    report.add("n", n).add("k", args.k);

    let (mean_lower, mean_upper, balanced) = if args.exact {
        let total_bits = (n * args.k) as f64;
        let (mut lo, mut up, mut bal, mut exact) = (0.0, 0.0, 0.0, 0.0);
        for p in enumerate_profiles(&vocab, n) {
            let w = (log2_big(&multinomial(n, p.counts())?) - total_bits).exp2();
            let s = representative(&vocab, &p)?;
            lo += w * lower_bound_profile(&p) as f64;
            up += w * upper_bound_profile(&p) as f64;
            if is_balanced(&s)? {
                bal += w;
            }
            if args.oracle {
                let Some(min) = exact_c(&s, &EnumerationBudget::with_max_size(args.budget_size))? else {
                    return Err(OverBudget(format!("C > {} for {:?}", args.budget_size, p.counts())).into());
                };
                exact += w * min.size as f64;
            }
        }
        report.add("mode", "exact");
        if args.oracle {
            report.add("mean_exact", num(exact));
        }
        (lo, up, bal)
    } else {
        if args.samples == 0 {
            bail!("need at least one sample");
        }
        let (mut lo, mut up, mut bal) = (0usize, 0usize, 0usize);
        for i in 0..args.samples {
            let s = sample_uniform(&vocab, n, args.seed.wrapping_add(i as u64))?;
            let p = s.profile();
            lo += lower_bound_profile(&p);
            up += upper_bound_profile(&p);
            bal += is_balanced(&s)? as usize;
        }
        let m = args.samples as f64;
        report.add("mode", "sampled").add("samples", args.samples).add("seed", args.seed);
        (lo as f64 / m, up as f64 / m, bal as f64 / m)
    };
    report
        .add("mean_lower", num(mean_lower))
        .add("mean_upper", num(mean_upper))
        .add("target_3n_over_t", num(target))
        .add("lower_ratio", num(mean_lower / target))
        .add("upper_ratio", num(mean_upper / target))
        .add("balanced_fraction", num(balanced))
        .add("balanced_floor", num(1.0 - 2.0 * t as f64 / n as f64));
    report.emit(common.format, common.out.as_deref())
}
