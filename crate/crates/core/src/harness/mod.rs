//! Sampling, experiment drivers and report formats.
//!
//! Pair `i` of an experiment is `(sample_point(cfg, 2i), sample_point(cfg, 2i+1))`.
//! Work is spread over rayon and collected in index order, so reports depend
//! only on the config.

mod config;
mod experiments;
mod report;

pub use config::{sample_point, ExperimentConfig, RayKind, RaySpec, ReportFormat, SourceMetric};
pub use experiments::{
    almost_isometry_report, compare_metrics, phi_experiment, verify_arc_construction, AlmostIsometryReport,
    ArcCheck, ArcStatus, ArcVerification, CompareRow, NeighborRatio, PhiRow, PhiTable, ARC_CHECK_SLACK,
};
pub use report::{fmt_f64, read_csv, to_csv, to_json, write_csv, ArcRecord, CompareRecord, CsvRecord};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{comparison_bounds, ComparisonBounds};
use crate::error::Result;
use crate::metrics::{arc_lower, teich_interval, thurston_lower, MetricEstimate, TeichEstimate};
use crate::pants_trig::{case1_constants, case2_constants, gap_constants, Case1Constants, Case2Constants, GapConstants};
use crate::surface::FNPoint;

/// Ray used when the config gives none: 21 points along the first twist.
pub const DEFAULT_RAY: RaySpec = RaySpec {
    curve: 0,
    step: 0.25,
    count: 21,
    kind: RayKind::Twist,
};

pub fn sample_pair(cfg: &ExperimentConfig, pair: usize) -> Result<(FNPoint, FNPoint)> {
    let i = 2 * pair as u64;
    Ok((sample_point(cfg, i)?, sample_point(cfg, i + 1)?))
}

pub fn run_compare(cfg: &ExperimentConfig) -> Result<Vec<CompareRecord>> {
    cfg.validate()?;
    let m = cfg.marking()?;
    (0..cfg.samples)
        .into_par_iter()
        .map(|pair| {
            let (x1, x2) = sample_pair(cfg, pair)?;
            Ok(CompareRecord {
                pair,
                row: compare_metrics(&x1, &x2, &m, cfg.depth)?,
            })
        })
        .collect()
}

pub fn run_verify(cfg: &ExperimentConfig) -> Result<Vec<ArcVerification>> {
    cfg.validate()?;
    let m = cfg.marking()?;
    (0..cfg.samples)
        .into_par_iter()
        .map(|pair| {
            let (x1, x2) = sample_pair(cfg, pair)?;
            verify_arc_construction(&x1, &x2, &m, cfg.depth)
        })
        .collect()
}

pub fn arc_records(runs: &[ArcVerification]) -> Vec<ArcRecord> {
    runs.iter()
        .enumerate()
        .flat_map(|(pair, v)| v.checks.iter().map(move |c| ArcRecord::new(pair, c)))
        .collect()
}

pub fn run_phi(cfg: &ExperimentConfig) -> Result<PhiTable> {
    cfg.validate()?;
    let m = cfg.marking()?;
    let x = sample_point(cfg, 0)?;
    phi_experiment(&x, &cfg.ray.unwrap_or(DEFAULT_RAY), &m, cfg.depth, cfg.phi_ceiling())
}

pub fn run_report(cfg: &ExperimentConfig) -> Result<AlmostIsometryReport> {
    cfg.validate()?;
    let m = cfg.marking()?;
    let samples = (0..cfg.samples as u64)
        .map(|i| sample_point(cfg, i))
        .collect::<Result<Vec<_>>>()?;
    almost_isometry_report(&samples, None, &m, cfg.depth, cfg.source_metric)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub x1: FNPoint,
    pub x2: FNPoint,
    pub thurston: MetricEstimate,
    pub thurston_reverse: MetricEstimate,
    pub arc: MetricEstimate,
    pub arc_reverse: MetricEstimate,
    pub teich: TeichEstimate,
}

/// All distance estimates between the two points of pair 0.
pub fn run_distance(cfg: &ExperimentConfig) -> Result<DistanceReport> {
    cfg.validate()?;
    let m = cfg.marking()?;
    let (x1, x2) = sample_pair(cfg, 0)?;
    Ok(DistanceReport {
        thurston: thurston_lower(&x1, &x2, &m, cfg.depth)?,
        thurston_reverse: thurston_lower(&x2, &x1, &m, cfg.depth)?,
        arc: arc_lower(&x1, &x2, &m, cfg.depth)?,
        arc_reverse: arc_lower(&x2, &x1, &m, cfg.depth)?,
        teich: teich_interval(&x1, &x2, &m, cfg.depth)?,
        x1,
        x2,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub boundary: Vec<f64>,
    pub case1: Option<Case1Constants>,
    pub case2: Case2Constants,
    pub gap: GapConstants,
    pub comparison: ComparisonBounds,
}

pub fn constants_report(boundary: &[f64]) -> Result<ConstantsReport> {
    Ok(ConstantsReport {
        boundary: boundary.to_vec(),
        case1: if boundary.len() >= 2 { Some(case1_constants(boundary)?) } else { None },
        case2: case2_constants(boundary)?,
        gap: gap_constants(boundary)?,
        comparison: comparison_bounds(boundary.len())?,
    })
}
