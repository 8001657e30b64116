use std::io::{Read, Write};

use fecverify_core::sim::BerRow;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// The columns written for each BER point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub x: f64,
    pub ber: f64,
    pub frame_errors: u64,
    pub trials: u64,
    pub stderr: f64,
}

impl From<&BerRow> for CsvRow {
    fn from(r: &BerRow) -> Self {
        Self {
            x: r.x,
            ber: r.ber,
            frame_errors: r.frame_errors,
            trials: r.trials,
            stderr: r.stderr,
        }
    }
}

pub fn write_ber_csv<W: Write>(rows: &[BerRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_ber_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(Into::into))
        .collect()
}
