use anyhow::{Context, Result};
use clap::Args;
use fo_describe::game::{decide_with_budget, GamePosition, ModelSet, DEFAULT_NODE_BUDGET};
use fo_describe::logic::to_prenex;
use fo_describe::semantics::{eval, Assignment};
use fo_describe::structures::UnaryStructure;

use super::printed;
use crate::report::Report;
use crate::{input, Common, Unverified};

#[derive(Debug, Args)]
pub struct GameArgs {
    /// A structure on the side S must make true (repeatable)
    #[arg(long = "a", required = true)]
    a: Vec<String>,
    /// A structure on the side S must make false (repeatable)
    #[arg(long = "b", required = true)]
    b: Vec<String>,
    /// Resources: the largest allowed formula size
    #[arg(long)]
    r: u32,
    /// The most quantifiers allowed
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget_nodes: u64,
}

fn load_all(inputs: &[String], names: Option<&str>) -> Result<Vec<UnaryStructure>> {
    inputs.iter().map(|i| input::load(i, names)).collect()
}

pub fn run(args: GameArgs, common: &Common) -> Result<()> {
    let names = common.vocab.as_deref();
    let a = load_all(&args.a, names)?;
    let b = load_all(&args.b, names)?;
    let mut all = a.clone();
    all.extend(b.iter().cloned());
    // both sides must share vocabulary and size
    ModelSet::sentences_over(&all).context("A and B")?;
    let pos = GamePosition::start(args.r, args.q, ModelSet::sentences_over(&a)?, ModelSet::sentences_over(&b)?);
    let decision = decide_with_budget(&pos, args.budget_nodes)?;

    let mut report = Report::default();
    report.add("winner", format!("{:?}", decision.winner)).add("nodes", decision.nodes);
    if let Some(f) = &decision.strategy {
        let vocab = a[0].vocab();
        let text = printed(f, vocab)?;
        let none = Assignment::new();
        let separates = a.iter().map(|s| eval(s, &none, f)).collect::<Result<Vec<_>, _>>()?.into_iter().all(|x| x)
            && !b.iter().map(|s| eval(s, &none, f)).collect::<Result<Vec<_>, _>>()?.into_iter().any(|x| x);
        let quantifiers = to_prenex(f).prefix.len();
        if !separates || f.size() > args.r as usize || quantifiers > args.q as usize {
            return Err(Unverified(format!("strategy {text} does not separate within r = {}, q = {}", args.r, args.q)).into());
        }
        report
            .add("strategy", text)
            .add("size", f.size())
            .add("quantifiers", quantifiers)
            .add("verified", true);
    }
    report.emit(common.format, common.out.as_deref())
}
