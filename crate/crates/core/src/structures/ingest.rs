use std::fs::File;
use std::io::Read;
use std::path::Path;

use csv::{ReaderBuilder, Trim};

use super::{UnaryStructure, Vocabulary};
use crate::error::{Error, Result};

/// Reads a Boolean table: the header row names the predicates, every further
/// row is one domain element with a `0`/`1` cell per predicate.
pub fn ingest_csv<R: Read>(reader: R) -> Result<UnaryStructure> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader);

    let header = rdr.headers()?.clone();
    let vocab = Vocabulary::new(header.iter().map(str::to_owned)).map_err(|e| Error::Ingest {
        line: 1,
        message: e.to_string(),
    })?;

    let mut type_of = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != vocab.k() {
            return Err(Error::Ingest {
                line,
                message: format!("expected {} cells, found {}", vocab.k(), record.len()),
            });
        }
        let mut ty = 0;
        for (p, cell) in record.iter().enumerate() {
            match cell {
                "0" => {}
                "1" => ty |= 1 << p,
                other => {
                    return Err(Error::Ingest {
                        line,
                        message: format!("cell {other:?} in column {} is not 0 or 1", vocab.name(p)),
                    })
                }
            }
        }
        type_of.push(ty);
    }
    if type_of.is_empty() {
        return Err(Error::Ingest {
            line: 2,
            message: "no data rows".into(),
        });
    }
    UnaryStructure::new(vocab, type_of)
}

pub fn ingest_csv_path(path: impl AsRef<Path>) -> Result<UnaryStructure> {
    let file = File::open(path.as_ref()).map_err(csv::Error::from)?;
    ingest_csv(file)
}
