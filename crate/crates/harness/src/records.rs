//! One CSV row per run.

use std::io::{Read, Write};

use agemoa_core::{ProblemKind, RunResult};
use serde::{Deserialize, Serialize};

use crate::algorithm::Algorithm;
use crate::config::Cell;

/// Column order of every CSV the harness writes.
pub const CSV_HEADER: &str =
    "algorithm,kind,n,m,k,mu,tau,run,seed,iterations,evaluations,covered_all,first_hit_K,first_hit_C";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    #[serde(with = "kind_text")]
    pub kind: ProblemKind,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub mu: usize,
    /// Empty for the non-aging algorithms.
    pub tau: Option<u64>,
    pub run: usize,
    pub seed: u64,
    pub iterations: u64,
    /// Always `mu + iterations`.
    pub evaluations: u64,
    pub covered_all: bool,
    #[serde(rename = "first_hit_K")]
    pub first_hit_k: Option<u64>,
    #[serde(rename = "first_hit_C")]
    pub first_hit_c: Option<u64>,
}

impl RunRecord {
    pub fn new(cell: &Cell, run: usize, result: &RunResult) -> Self {
        RunRecord {
            algorithm: cell.algorithm,
            kind: cell.spec.kind(),
            n: cell.spec.n(),
            m: cell.spec.m(),
            k: cell.spec.k(),
            mu: cell.mu,
            tau: cell.tau,
            run,
            seed: result.seed,
            iterations: result.iterations,
            evaluations: result.evaluations,
            covered_all: result.covered_all,
            first_hit_k: result.first_hit_k,
            first_hit_c: result.first_hit_c,
        }
    }
}

mod kind_text {
    use agemoa_core::ProblemKind;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(kind: &ProblemKind, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(kind.as_str())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ProblemKind, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// A CSV writer that emits the header line only when `with_header` is set,
/// so it can also append to an existing file.
pub fn csv_writer<W: Write>(out: W, with_header: bool) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .has_headers(with_header)
        .from_writer(out)
}

pub fn write_records<W: Write>(out: W, records: &[RunRecord]) -> csv::Result<()> {
    let mut w = csv_writer(out, false);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a harness CSV. Errors carry the offending line number.
pub fn read_records<R: Read>(input: R) -> Result<Vec<RunRecord>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(format!("line 1: unexpected header {:?}", header.join(",")));
    }
    reader
        .deserialize()
        .map(|row| {
            row.map_err(|e| match e.position() {
                Some(pos) => format!("line {}: {e}", pos.line()),
                None => e.to_string(),
            })
        })
        .collect()
}
