use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::Args;
use fo_describe::entropy::{envelope, fo_bound_curves, fod_bound_steps, region_membership, StepRow};
use fo_describe::structures::{enumerate_profiles, Vocabulary};

use crate::report::{num, opt, write_out};
use crate::svg::Plot;
use crate::{Common, Format, Unverified};

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Domain size (default 1000, or 100 with --d)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Plot the bounded-rank steps for this quantifier rank
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 512)]
    samples: usize,
    /// Keep negative lower bounds instead of clipping them to 0
    #[arg(long)]
    no_clip: bool,
    /// Also place every profile of size n in the region (its own CSV)
    #[arg(long)]
    region: bool,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn run(args: PlotArgs, common: &Common) -> Result<()> {
    let vocab = Vocabulary::standard(args.k)?;
    let default_prefix = if args.d.is_some() { "bounds-d" } else { "bounds" };
    let prefix = common.out.clone().unwrap_or_else(|| PathBuf::from(default_prefix));
    let mut written = Vec::new();
    let mut emit = |suffix: &str, text: String| -> Result<()> {
        let path = with_suffix(&prefix, suffix);
        write_out(&text, Some(&path))?;
        written.push(path);
        Ok(())
    };
    match args.d {
        Some(d) => {
            let n = args.n.unwrap_or(100);
            let steps = fod_bound_steps(&vocab, n, d)?;
            let rows = steps.iter().map(|s| {
                vec![s.h.to_string(), opt(s.lower_entropy), num(s.upper_entropy), s.lower.to_string(), s.upper.to_string()]
            });
            emit(".csv", csv_text(&["h", "lower_entropy", "upper_entropy", "lower", "upper"], rows)?)?;
            if common.format == Format::Svg {
                emit(".svg", step_svg(&steps, n, vocab.k(), d))?;
            }
        }
        None => {
            let n = args.n.unwrap_or(1000);
            if args.samples < 2 {
                bail!("need at least two samples");
            }
            let rows = fo_bound_curves(&vocab, n, args.samples)?;
            let rows: Vec<_> = rows.into_iter().map(|r| if args.no_clip { r } else { r.clipped() }).collect();
            let table = rows.iter().map(|r| {
                vec![num(r.p), opt(r.f), opt(r.h), opt(r.lower), opt(r.upper), opt(r.upper_low_entropy), num(r.ceiling)]
            });
            emit(
                ".csv",
                csv_text(&["p", "f", "h", "lower", "upper", "upper_low_entropy", "ceiling"], table)?,
            )?;
            let mut points = Vec::new();
            let mut outside = 0usize;
            if args.region {
                let mut table = Vec::new();
                for p in enumerate_profiles(&vocab, n) {
                    let r = region_membership(&p)?;
                    outside += !r.inside as usize;
                    points.push((r.shannon, r.lower_bound as f64));
                    points.push((r.shannon, r.upper_bound as f64));
                    let counts: Vec<String> = p.counts().iter().map(ToString::to_string).collect();
                    table.push(vec![
                        counts.join(" "),
                        num(r.shannon),
                        r.lower_bound.to_string(),
                        r.upper_bound.to_string(),
                        num(r.envelope.lower),
                        num(r.envelope.upper),
                        r.inside.to_string(),
                    ]);
                }
                emit(
                    "-region.csv",
                    csv_text(
                        &["counts", "shannon", "lower_bound", "upper_bound", "region_lower", "region_upper", "inside"],
                        table,
                    )?,
                )?;
            }
            if common.format == Format::Svg {
                emit(".svg", region_svg(&vocab, n, args.samples, &points, !args.no_clip))?;
            }
            if outside > 0 {
                return Err(Unverified(format!("{outside} profiles fall outside the region")).into());
            }
        }
    }
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn region_svg(vocab: &Vocabulary, n: usize, samples: usize, points: &[(f64, f64)], clip: bool) -> String {
    let (t, c) = (vocab.t(), vocab.c_tau());
    let (nf, cf) = (n as f64, c as f64);
    let h_max = (t as f64).log2();
    let ceiling = 2.0 * nf + cf;
    let mut plot = Plot::new(h_max, 1.1 * ceiling, "H_S", "C");
    let grid: Vec<_> = (0..samples)
        .map(|i| {
            let h = h_max * i as f64 / (samples - 1) as f64;
            (h, envelope(t, c, n, h))
        })
        .collect();
    plot.line(&grid.iter().map(|&(h, e)| (h, e.upper)).collect::<Vec<_>>(), 2.0);
    let lower: Vec<_> = grid
        .iter()
        .map(|&(h, e)| (h, if clip { e.lower.max(0.0) } else { e.lower }))
        .collect();
    plot.line(&lower, 2.0);
    plot.dots(points, "#1f77b4");
    for i in 1..=vocab.k() {
        plot.x_tick(i as f64, &i.to_string());
    }
    plot.y_tick(cf, "c_τ");
    plot.y_tick(3.0 * nf / t as f64, &format!("3n/{t}"));
    plot.y_tick(1.5 * nf, "3n/2");
    plot.y_tick(ceiling, "2n+c_τ");
    plot.caption(&format!("n = {n}, |τ| = {}", vocab.k()));
    plot.finish()
}

/// Leading terms only: `3h` below, `6h` above.
fn step_svg(steps: &[StepRow], n: usize, k: usize, d: usize) -> String {
    let h_max = (n * k) as f64;
    let top = 6.0 * d as f64;
    let mut plot = Plot::new(h_max, 1.1 * top, "H_B^d", "C_d");
    let mut from = 0.0;
    let mut level = 0.0;
    for s in steps {
        let Some(to) = s.lower_entropy else { break };
        plot.line(&[(from, level), (to, level)], 1.5);
        from = to;
        level = 3.0 * s.h as f64;
    }
    plot.line(&[(from, level), (h_max, level)], 1.5);
    let mut from = 0.0;
    for s in steps {
        plot.line(&[(from, 6.0 * s.h as f64), (s.upper_entropy, 6.0 * s.h as f64)], 1.5);
        from = s.upper_entropy;
    }
    // past the last step only the general bound 3d + 3(d-1) remains
    let tail = 6.0 * d as f64 - 3.0;
    plot.line(&[(from, tail), (h_max, tail)], 1.5);
    plot.x_tick(h_max / 2.0, &num_label(h_max / 2.0));
    plot.x_tick(h_max, &num_label(h_max));
    plot.y_tick(3.0 * d as f64, &(3 * d).to_string());
    plot.y_tick(top, &(6 * d).to_string());
    plot.caption(&format!("n = {n}, d = {d}, |τ| = {k}; constants -3 and c_τ omitted"));
    plot.finish()
}

fn num_label(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{x:.0}")
    } else {
        format!("{x:.1}")
    }
}
