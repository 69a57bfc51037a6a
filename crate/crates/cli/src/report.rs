//! CSV emission. One row per report with the fixed column set in
//! [`COLUMNS`]; floats use Rust's shortest round-trip formatting so equal
//! runs give equal bytes.

use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use gcorr::gaussian::MeasureEstimate;
use gcorr::{InequalityReport, Verdict};

use crate::CliError;

pub const COLUMNS: [&str; 13] = [
    "name", "n", "lhs", "lhs_lo", "lhs_hi", "rhs", "rhs_lo", "rhs_hi", "margin", "verdict", "samples", "seed", "params",
];

#[derive(Serialize)]
struct Row<'a> {
    name: &'a str,
    n: usize,
    lhs: f64,
    lhs_lo: f64,
    lhs_hi: f64,
    rhs: f64,
    rhs_lo: f64,
    rhs_hi: f64,
    margin: f64,
    verdict: &'a str,
    samples: usize,
    seed: u64,
    params: &'a str,
}

impl<'a> From<&'a InequalityReport> for Row<'a> {
    fn from(r: &'a InequalityReport) -> Self {
        Row {
            name: &r.name,
            n: r.n,
            lhs: r.lhs.value,
            lhs_lo: r.lhs.low,
            lhs_hi: r.lhs.high,
            rhs: r.rhs.value,
            rhs_lo: r.rhs.low,
            rhs_hi: r.rhs.high,
            margin: r.margin,
            verdict: r.verdict.as_str(),
            samples: r.samples,
            seed: r.seed,
            params: &r.params,
        }
    }
}

pub fn write_reports<W: Write>(out: W, reports: &[InequalityReport]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    if reports.is_empty() {
        w.write_record(COLUMNS)?;
    }
    for r in reports {
        w.serialize(Row::from(r))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Serialize)]
struct MeasureRow<'a> {
    value: f64,
    ci_low: f64,
    ci_high: f64,
    source: &'a str,
    samples: usize,
    seed: Option<u64>,
}

pub fn write_measure<W: Write>(out: W, e: &MeasureEstimate) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.serialize(MeasureRow {
        value: e.value,
        ci_low: e.ci_low,
        ci_high: e.ci_high,
        source: match e.source {
            gcorr::Source::Exact => "exact",
            gcorr::Source::Quadrature => "quadrature",
            gcorr::Source::MonteCarlo => "monte_carlo",
        },
        samples: e.samples,
        seed: e.seed,
    })?;
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Runs `write` against the file at `path`, or standard output.
pub fn with_output(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f = File::create(p).map_err(|source| CliError::Write {
                path: p.to_path_buf(),
                source,
            })?;
            write(&mut f)
        }
        None => write(&mut io::stdout().lock()),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub confirmed: usize,
    pub inconclusive: usize,
    pub violated: usize,
}

impl Summary {
    pub fn of(reports: &[InequalityReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Confirmed => s.confirmed += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
                Verdict::Violated => s.violated += 1,
            }
        }
        s
    }

    pub fn total(&self) -> usize {
        self.confirmed + self.inconclusive + self.violated
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} reports: {} confirmed, {} inconclusive, {} violated",
            self.total(),
            self.confirmed,
            self.inconclusive,
            self.violated
        )
    }
}
