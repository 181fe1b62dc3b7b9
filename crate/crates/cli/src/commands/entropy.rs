use anyhow::Result;
use clap::Args;
use fo_describe::entropy::{boltzmann_entropy_d, entropy_gap_check, region_membership};
use fo_describe::structures::class_tuple_of;

use crate::report::{num, Report};
use crate::{input, Common};

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// CSV file or profile literal
    input: String,
    /// Also report the Boltzmann entropy of the ≡_d class
    #[arg(long)]
    d: Option<usize>,
}

pub fn run(args: EntropyArgs, common: &Common) -> Result<()> {
    let s = input::load(&args.input, common.vocab.as_deref())?;
    let p = s.profile();
    let r = entropy_gap_check(&p)?;
    let region = region_membership(&p)?;
    let mut report = Report::default();
    report
        .add("profile", format!("{:?}", p.counts()))
        .add("shannon", num(r.shannon))
        .add("boltzmann", num(r.boltzmann))
        .add("boltzmann_over_n", num(r.boltzmann_over_n))
        .add("gap", num(r.gap))
        .add("gap_bound", num(r.gap_bound))
        .add("gap_holds", r.holds())
        .add("all_types_realized", r.all_positive)
        .add("lower_bound", region.lower_bound)
        .add("upper_bound", region.upper_bound)
        .add("region_lower", num(region.envelope.lower))
        .add("region_upper", num(region.envelope.upper))
        .add("inside_region", region.inside);
    if let Some(d) = args.d {
        let c = class_tuple_of(&s, d)?;
        report.add("class", &c).add("boltzmann_d", num(boltzmann_entropy_d(&c)));
    }
    report.emit(common.format, common.out.as_deref())
}
