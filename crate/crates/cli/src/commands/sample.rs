use anyhow::Result;
use clap::Args;
use fo_describe::structures::{sample_uniform, UnaryStructure, Vocabulary};

use crate::report::write_out;
use crate::Common;

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    seed: u64,
}

/// The structure as a Boolean table with a header row.
pub fn to_csv(s: &UnaryStructure) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(s.vocab().predicates())?;
    for e in 0..s.n() {
        w.write_record((0..s.vocab().k()).map(|p| if s.holds(p, e) { "1" } else { "0" }))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn run(args: SampleArgs, common: &Common) -> Result<()> {
    let vocab = match &common.vocab {
        Some(names) => Vocabulary::new(names.split(',').map(|s| s.trim().to_owned()))?,
        None => Vocabulary::standard(args.k)?,
    };
    let s = sample_uniform(&vocab, args.n, args.seed)?;
    write_out(&to_csv(&s)?, common.out.as_deref())
}
