use std::path::Path;

use anyhow::{bail, Context, Result};
use fo_describe::structures::{ingest_csv_path, representative, TypeProfile, UnaryStructure, Vocabulary};

/// `k=2 n=10 counts=0,0,3,7`; `n` may be left out.
pub fn parse_profile_literal(text: &str, names: Option<&str>) -> Result<UnaryStructure> {
    let (mut k, mut n, mut counts) = (None, None, None);
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .with_context(|| format!("expected key=value, found {field:?}"))?;
        match key {
            "k" => k = Some(value.parse::<usize>().with_context(|| format!("bad k {value:?}"))?),
            "n" => n = Some(value.parse::<usize>().with_context(|| format!("bad n {value:?}"))?),
            "counts" => {
                counts = Some(
                    value
                        .split(',')
                        .map(|c| c.trim().parse::<usize>().with_context(|| format!("bad count {c:?}")))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            other => bail!("unknown field {other:?} in profile literal"),
        }
    }
    let counts = counts.context("profile literal needs counts=")?;
    let vocab = match names {
        Some(names) => Vocabulary::new(names.split(',').map(|s| s.trim().to_owned()))?,
        None => {
            let k = match k {
                Some(k) => k,
                None if counts.len().is_power_of_two() => counts.len().trailing_zeros() as usize,
                None => bail!("{} counts is not a power of two", counts.len()),
            };
            Vocabulary::standard(k)?
        }
    };
    if k.is_some_and(|k| k != vocab.k()) {
        bail!("k = {} but the vocabulary has {} predicates", k.unwrap(), vocab.k());
    }
    if counts.len() != vocab.t() {
        bail!("expected {} counts for k = {}, found {}", vocab.t(), vocab.k(), counts.len());
    }
    let profile = TypeProfile::new(counts)?;
    if let Some(n) = n {
        if n != profile.n() {
            bail!("n = {n} but the counts sum to {}", profile.n());
        }
    }
    if profile.n() == 0 {
        bail!("a structure needs at least one element");
    }
    Ok(representative(&vocab, &profile)?)
}

/// A CSV path, or a profile literal when the text mentions `counts=`.
pub fn load(input: &str, names: Option<&str>) -> Result<UnaryStructure> {
    if input.contains("counts=") {
        parse_profile_literal(input, names)
    } else {
        ingest_csv_path(Path::new(input)).with_context(|| format!("reading {input}"))
    }
}
