//! Report serialization. CSV floats use `{:.16e}` (17 significant digits),
//! which parses back to the same `f64`; JSON goes through serde_json, whose
//! shortest round-trip formatting is also exact.
//!
//! Frozen CSV columns:
//!
//! * compare: `pair,d_th,d_a,difference,gap,teich_lo,teich_hi,th_witness,a_witness,teich_witness,ordered`
//! * verify-arcs: `pair,arc,status,arc_ratio,required,best_ratio,witness`
//! * phi-experiment: `s,parameter,d_th,d_th_phi,difference,teich_lo,teich_hi,teich_phi_lo,teich_phi_hi,teich_diff_lo,teich_diff_hi`

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::experiments::{ArcCheck, ArcStatus, CompareRow, PhiRow};
use crate::error::{Error, Result};
use crate::metrics::Interval;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::Config(format!("bad float {s:?}")))
}

fn parse_opt(s: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_f64(s).map(Some)
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Config(format!("bad integer {s:?}")))
}

pub trait CsvRecord: Sized {
    const HEADER: &'static [&'static str];
    fn to_fields(&self) -> Vec<String>;
    fn from_fields(f: &[&str]) -> Result<Self>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRecord {
    pub pair: usize,
    #[serde(flatten)]
    pub row: CompareRow,
}

impl CsvRecord for CompareRecord {
    const HEADER: &'static [&'static str] = &[
        "pair",
        "d_th",
        "d_a",
        "difference",
        "gap",
        "teich_lo",
        "teich_hi",
        "th_witness",
        "a_witness",
        "teich_witness",
        "ordered",
    ];

    fn to_fields(&self) -> Vec<String> {
        let r = &self.row;
        vec![
            self.pair.to_string(),
            fmt_f64(r.d_th),
            fmt_f64(r.d_a),
            fmt_f64(r.difference),
            fmt_f64(r.gap),
            fmt_f64(r.teich_lo),
            fmt_f64(r.teich_hi),
            r.th_witness.clone(),
            r.a_witness.clone(),
            r.teich_witness.clone(),
            r.ordered.to_string(),
        ]
    }

    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(CompareRecord {
            pair: parse_usize(f[0])?,
            row: CompareRow {
                d_th: parse_f64(f[1])?,
                d_a: parse_f64(f[2])?,
                difference: parse_f64(f[3])?,
                gap: parse_f64(f[4])?,
                teich_lo: parse_f64(f[5])?,
                teich_hi: parse_f64(f[6])?,
                th_witness: f[7].to_string(),
                a_witness: f[8].to_string(),
                teich_witness: f[9].to_string(),
                ordered: f[10] == "true",
            },
        })
    }
}

/// Flattened [`ArcCheck`] without the per-neighbour detail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub pair: usize,
    pub arc: String,
    pub status: ArcStatus,
    pub arc_ratio: f64,
    pub required: f64,
    pub best_ratio: Option<f64>,
    pub witness: Option<String>,
}

impl ArcRecord {
    pub fn new(pair: usize, c: &ArcCheck) -> Self {
        ArcRecord {
            pair,
            arc: c.arc.clone(),
            status: c.status,
            arc_ratio: c.arc_ratio,
            required: c.required,
            best_ratio: c.best_ratio,
            witness: c.witness.clone(),
        }
    }
}

fn status_name(s: ArcStatus) -> &'static str {
    match s {
        ArcStatus::Pass => "pass",
        ArcStatus::Fail => "fail",
        ArcStatus::Vacuous => "vacuous",
        ArcStatus::NoEssentialCurve => "no_essential_curve",
    }
}

fn parse_status(s: &str) -> Result<ArcStatus> {
    [ArcStatus::Pass, ArcStatus::Fail, ArcStatus::Vacuous, ArcStatus::NoEssentialCurve]
        .into_iter()
        .find(|&v| status_name(v) == s)
        .ok_or_else(|| Error::Config(format!("bad arc status {s:?}")))
}

impl CsvRecord for ArcRecord {
    const HEADER: &'static [&'static str] =
        &["pair", "arc", "status", "arc_ratio", "required", "best_ratio", "witness"];

    fn to_fields(&self) -> Vec<String> {
        vec![
            self.pair.to_string(),
            self.arc.clone(),
            status_name(self.status).to_string(),
            fmt_f64(self.arc_ratio),
            fmt_f64(self.required),
            self.best_ratio.map(fmt_f64).unwrap_or_default(),
            self.witness.clone().unwrap_or_default(),
        ]
    }

    fn from_fields(f: &[&str]) -> Result<Self> {
        Ok(ArcRecord {
            pair: parse_usize(f[0])?,
            arc: f[1].to_string(),
            status: parse_status(f[2])?,
            arc_ratio: parse_f64(f[3])?,
            required: parse_f64(f[4])?,
            best_ratio: parse_opt(f[5])?,
            witness: (!f[6].is_empty()).then(|| f[6].to_string()),
        })
    }
}

impl CsvRecord for PhiRow {
    const HEADER: &'static [&'static str] = &[
        "s",
        "parameter",
        "d_th",
        "d_th_phi",
        "difference",
        "teich_lo",
        "teich_hi",
        "teich_phi_lo",
        "teich_phi_hi",
        "teich_diff_lo",
        "teich_diff_hi",
    ];

    fn to_fields(&self) -> Vec<String> {
        let mut out = vec![self.s.to_string()];
        out.extend(
            [
                self.parameter,
                self.d_th,
                self.d_th_phi,
                self.difference,
                self.teich.lo,
                self.teich.hi,
                self.teich_phi.lo,
                self.teich_phi.hi,
                self.teich_diff_lo,
                self.teich_diff_hi,
            ]
            .map(fmt_f64),
        );
        out
    }

    fn from_fields(f: &[&str]) -> Result<Self> {
        let v: Vec<f64> = f[1..].iter().map(|s| parse_f64(s)).collect::<Result<_>>()?;
        Ok(PhiRow {
            s: parse_usize(f[0])?,
            parameter: v[0],
            d_th: v[1],
            d_th_phi: v[2],
            difference: v[3],
            teich: Interval { lo: v[4], hi: v[5] },
            teich_phi: Interval { lo: v[6], hi: v[7] },
            teich_diff_lo: v[8],
            teich_diff_hi: v[9],
        })
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_csv<R: CsvRecord, W: Write>(rows: &[R], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::HEADER).map_err(csv_error)?;
    for r in rows {
        w.write_record(r.to_fields()).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn to_csv<R: CsvRecord>(rows: &[R]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

pub fn read_csv<R: CsvRecord>(text: &str) -> Result<Vec<R>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(csv_error)?;
    if header.iter().ne(R::HEADER.iter().copied()) {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            let fields: Vec<&str> = rec.iter().collect();
            R::from_fields(&fields)
        })
        .collect()
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
