use anyhow::Result;
use clap::Args;
use fo_describe::semantics::{defines, defines_class};
use fo_describe::structures::class_tuple_of;
use fo_describe::synthesis::{synthesize_class, synthesize_profile, upper_bound, upper_bound_d};

use super::{printed, profile_count};
use crate::report::Report;
use crate::{input, Common, Unverified};

#[derive(Debug, Args)]
pub struct SynthesizeArgs {
    /// CSV file or profile literal such as "k=1 counts=2,4"
    input: String,
    /// Quantifier rank: describe the ≡_d class instead
    #[arg(long)]
    d: Option<usize>,
    /// Verify only when at most this many profiles must be checked
    #[arg(long, default_value_t = 200_000)]
    verify_profiles: u64,
}

pub fn run(args: SynthesizeArgs, common: &Common) -> Result<()> {
    let s = input::load(&args.input, common.vocab.as_deref())?;
    let vocab = s.vocab();
    let checkable = profile_count(s.n(), vocab.t()) <= args.verify_profiles;
    let mut report = Report::default();
    let (syn, bound, verdict) = match args.d {
        Some(d) => {
            let c = class_tuple_of(&s, d)?;
            let syn = synthesize_class(&c);
            let ok = checkable.then(|| defines_class(&c, &syn.formula)).transpose()?;
            report.add("class", &c);
            (syn, upper_bound_d(&c), ok.map(|ok| (ok, "defines_class")))
        }
        None => {
            let syn = synthesize_profile(&s.profile())?;
            let ok = checkable.then(|| defines(&s, &syn.formula)).transpose()?;
            (syn, upper_bound(&s), ok.map(|ok| (ok, "defines")))
        }
    };
    let text = printed(&syn.formula, vocab)?;
    report
        .add("profile", format!("{:?}", s.profile().counts()))
        .add("formula", &text)
        .add("size", syn.formula.size())
        .add("qrank", syn.formula.qrank())
        .add("variant", syn.plan.variant)
        .add("bound", bound);
    match verdict {
        Some((true, name)) => report.add("verdict", name),
        Some((false, name)) => return Err(Unverified(format!("{text} fails {name}")).into()),
        None => report.add("verdict", "unverified"),
    };
    if syn.formula.size() > bound {
        return Err(Unverified(format!("size {} exceeds the bound {bound}", syn.formula.size())).into());
    }
    report.emit(common.format, common.out.as_deref())
}
