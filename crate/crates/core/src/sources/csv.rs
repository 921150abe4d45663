//! Trial CSV formats.
//!
//! Sub-run files: header `pair,outcome_a,outcome_b`, one trial per row, pair
//! one of `ab`, `ac`, `db`, `dc`. Counterfactual files: header `j,a,d,b,c`.
//! Outcomes are written as `+1` / `-1`.

use std::io::{Read, Write};

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};

use crate::dataset::{CounterfactualDataset, CounterfactualTrial, SubRunDataset, SubRunTrial};
use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::settings::SettingPair;

const SUBRUN_HEADER: [&str; 3] = ["pair", "outcome_a", "outcome_b"];
const COUNTERFACTUAL_HEADER: [&str; 5] = ["j", "a", "d", "b", "c"];

/// A parsed trial file of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialFile {
    SubRuns(SubRunDataset),
    Counterfactual(CounterfactualDataset),
}

fn reader<R: Read>(source: R) -> csv::Reader<R> {
    ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(source)
}

fn column(headers: &StringRecord, name: &'static str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or(Error::MissingColumn(name))
}

fn field(record: &StringRecord, idx: usize, row: usize) -> Result<&str> {
    record.get(idx).ok_or_else(|| Error::MalformedRow {
        row,
        reason: format!("expected at least {} fields, got {}", idx + 1, record.len()),
    })
}

fn parse_outcome(s: &str, row: usize) -> Result<Outcome> {
    match s {
        "+1" | "1" => Ok(Outcome::Plus),
        "-1" => Ok(Outcome::Minus),
        _ => Err(Error::BadOutcomeField {
            row,
            value: s.to_string(),
        }),
    }
}

fn is_blank(headers: &StringRecord) -> bool {
    headers.iter().all(str::is_empty)
}

fn read_subruns<R: Read>(mut rdr: csv::Reader<R>, headers: &StringRecord) -> Result<SubRunDataset> {
    let [pair_col, a_col, b_col] = SUBRUN_HEADER.map(|name| column(headers, name));
    let (pair_col, a_col, b_col) = (pair_col?, a_col?, b_col?);

    let mut data = SubRunDataset::default();
    let mut rows = 0;
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record?;
        let label = field(&record, pair_col, row)?;
        let pair: SettingPair = label.parse().map_err(|_| Error::UnknownPair {
            row,
            label: label.to_string(),
        })?;
        let a = parse_outcome(field(&record, a_col, row)?, row)?;
        let b = parse_outcome(field(&record, b_col, row)?, row)?;
        data.list_mut(pair).push(SubRunTrial::new(a, b));
        rows += 1;
    }
    if rows == 0 {
        return Err(Error::NoTrials);
    }
    Ok(data)
}

fn read_counterfactual<R: Read>(
    mut rdr: csv::Reader<R>,
    headers: &StringRecord,
) -> Result<CounterfactualDataset> {
    let cols = COUNTERFACTUAL_HEADER.map(|name| column(headers, name));
    let mut idx = [0usize; 5];
    for (slot, c) in idx.iter_mut().zip(cols) {
        *slot = c?;
    }

    let mut trials = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record?;
        let j = field(&record, idx[0], row)?;
        j.parse::<u64>().map_err(|_| Error::MalformedRow {
            row,
            reason: format!("trial index {j:?} is not a non-negative integer"),
        })?;
        let get =
            |k: usize| -> Result<Outcome> { parse_outcome(field(&record, idx[k], row)?, row) };
        trials.push(CounterfactualTrial {
            a: get(1)?,
            d: get(2)?,
            b: get(3)?,
            c: get(4)?,
        });
    }
    if trials.is_empty() {
        return Err(Error::NoTrials);
    }
    Ok(CounterfactualDataset::from_trials(trials, None))
}

/// Reads a sub-run CSV, partitioning rows by setting pair in file order.
pub fn ingest_csv<R: Read>(source: R) -> Result<SubRunDataset> {
    let mut rdr = reader(source);
    let headers = rdr.headers()?.clone();
    if is_blank(&headers) {
        return Err(Error::NoTrials);
    }
    read_subruns(rdr, &headers)
}

/// Reads a counterfactual `j,a,d,b,c` CSV.
pub fn ingest_counterfactual_csv<R: Read>(source: R) -> Result<CounterfactualDataset> {
    let mut rdr = reader(source);
    let headers = rdr.headers()?.clone();
    if is_blank(&headers) {
        return Err(Error::NoTrials);
    }
    read_counterfactual(rdr, &headers)
}

/// Reads either format, choosing by the header row.
pub fn read_trial_file<R: Read>(source: R) -> Result<TrialFile> {
    let mut rdr = reader(source);
    let headers = rdr.headers()?.clone();
    if is_blank(&headers) {
        return Err(Error::NoTrials);
    }
    if headers.iter().any(|h| h == "pair") {
        read_subruns(rdr, &headers).map(TrialFile::SubRuns)
    } else if headers.iter().any(|h| h == "j") {
        read_counterfactual(rdr, &headers).map(TrialFile::Counterfactual)
    } else {
        Err(Error::UnknownHeader(
            headers.iter().collect::<Vec<_>>().join(","),
        ))
    }
}

/// Writes all four sub-runs, `ab` rows first, then `ac`, `db`, `dc`.
pub fn write_subrun_csv<W: Write>(sink: W, data: &SubRunDataset) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(sink);
    w.write_record(SUBRUN_HEADER)?;
    for pair in SettingPair::ALL {
        for t in data.list(pair) {
            w.write_record([pair.label(), t.outcome_a.as_str(), t.outcome_b.as_str()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes a counterfactual dataset with 1-based trial indices.
pub fn write_counterfactual_csv<W: Write>(sink: W, data: &CounterfactualDataset) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(sink);
    w.write_record(COUNTERFACTUAL_HEADER)?;
    for (j, t) in data.trials().enumerate() {
        let idx = (j + 1).to_string();
        w.write_record([
            idx.as_str(),
            t.a.as_str(),
            t.d.as_str(),
            t.b.as_str(),
            t.c.as_str(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
