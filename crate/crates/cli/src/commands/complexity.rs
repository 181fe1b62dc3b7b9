use anyhow::Result;
use clap::Args;
use fo_describe::game::lower_bound_profile;
use fo_describe::oracle::{exact_c, exact_cd, EnumerationBudget};
use fo_describe::semantics::{defines, defines_class};
use fo_describe::structures::class_tuple_of;
use fo_describe::synthesis::{upper_bound, upper_bound_d};

use super::printed;
use crate::report::Report;
use crate::{input, Common, OverBudget, Unverified};

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    /// CSV file or profile literal
    input: String,
    /// Search for the exact value instead of printing proven bounds
    #[arg(long)]
    exact: bool,
    /// Quantifier rank: C_d of the ≡_d class
    #[arg(long)]
    d: Option<usize>,
    /// Largest sentence size the exact search tries
    #[arg(long, default_value_t = 8)]
    budget_size: usize,
    /// Candidate sentences the exact search may generate
    #[arg(long, default_value_t = 50_000_000)]
    budget_nodes: u64,
}

pub fn run(args: ComplexityArgs, common: &Common) -> Result<()> {
    let s = input::load(&args.input, common.vocab.as_deref())?;
    let mut report = Report::default();
    report.add("profile", format!("{:?}", s.profile().counts()));
    let class = args.d.map(|d| class_tuple_of(&s, d)).transpose()?;
    if let Some(c) = &class {
        report.add("class", c);
    }
    let name = if class.is_some() { "C_d" } else { "C" };
    if !args.exact {
        let (lower, upper) = match &class {
            Some(c) => ((3 * c.second_largest()).saturating_sub(3), upper_bound_d(c)),
            None => (lower_bound_profile(&s.profile()), upper_bound(&s)),
        };
        report.add("bounds", format!("[{lower}, {upper}]"));
        return report.emit(common.format, common.out.as_deref());
    }

    let mut budget = EnumerationBudget::with_max_size(args.budget_size);
    budget.node_budget = args.budget_nodes;
    let found = match &class {
        Some(c) => exact_cd(s.vocab(), c, &budget)?,
        None => exact_c(&s, &budget)?,
    };
    let Some(min) = found else {
        report.add(name, format!("> {}", args.budget_size));
        report.emit(common.format, common.out.as_deref())?;
        return Err(OverBudget(format!("no definer of size <= {}", args.budget_size)).into());
    };
    let text = printed(&min.witness, s.vocab())?;
    let ok = match &class {
        Some(c) => defines_class(c, &min.witness)?,
        None => defines(&s, &min.witness)?,
    };
    if !ok {
        return Err(Unverified(format!("witness {text} does not define the structure")).into());
    }
    report.add(name, min.size).add("witness", text);
    report.emit(common.format, common.out.as_deref())
}
