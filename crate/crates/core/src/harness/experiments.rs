use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{RayKind, RaySpec, SourceMetric};
use crate::curves::{arc_length_at, enumerate_arcs, pants_neighborhood_boundaries};
use crate::error::{Error, Result};
use crate::metrics::{arc_lower, same_space, teich_interval, thurston_lower, Interval};
use crate::pants_trig::{gap_constants, GapConstants};
use crate::surface::{phi_gamma, CurveRef, FNPoint, Marking};

/// Relative slack on the inequality checked by [`verify_arc_construction`].
pub const ARC_CHECK_SLACK: f64 = 1e-12;

fn curve_id(c: CurveRef) -> String {
    match c {
        CurveRef::Interior(k) => format!("gamma{k}"),
        CurveRef::Boundary(i) => format!("beta{i}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcStatus {
    Pass,
    Fail,
    /// `l_{X2}(γ) ≤ l_{X1}(γ)`: nothing to check.
    Vacuous,
    /// Every neighbourhood curve is boundary-parallel.
    NoEssentialCurve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborRatio {
    pub curve: String,
    pub essential: bool,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcCheck {
    pub arc: String,
    pub arc_ratio: f64,
    /// `C · arc_ratio`.
    pub required: f64,
    pub best_ratio: Option<f64>,
    pub witness: Option<String>,
    pub neighbors: Vec<NeighborRatio>,
    pub status: ArcStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcVerification {
    pub constants: GapConstants,
    pub x1: FNPoint,
    pub x2: FNPoint,
    pub checks: Vec<ArcCheck>,
}

impl ArcVerification {
    pub fn count(&self, s: ArcStatus) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.count(ArcStatus::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ArcCheck> {
        self.checks.iter().filter(|c| c.status == ArcStatus::Fail)
    }
}

fn require_bordered(x: &FNPoint, op: &'static str) -> Result<()> {
    match x.boundary.iter().position(|&b| b <= 0.0) {
        Some(i) => Err(crate::error::domain(op, format!("boundary {i} must be > 0"))),
        None => Ok(()),
    }
}

/// Checks that each arc lengthened from `x1` to `x2` hands its stretch, up to
/// the factor `C`, to an essential boundary curve of its pants neighbourhood.
pub fn verify_arc_construction(x1: &FNPoint, x2: &FNPoint, m: &Marking, depth: u32) -> Result<ArcVerification> {
    same_space(x1, x2, "verify_arc_construction")?;
    x1.check_against(m)?;
    require_bordered(x1, "verify_arc_construction")?;
    let constants = gap_constants(&x1.boundary)?;
    let arcs = enumerate_arcs(m, depth);
    let checks = arcs
        .par_iter()
        .map(|a| {
            let arc_ratio = arc_length_at(x2, m, a)? / arc_length_at(x1, m, a)?;
            let required = constants.c * arc_ratio;
            let neighbors: Vec<NeighborRatio> = pants_neighborhood_boundaries(a, m)
                .into_iter()
                .map(|nc| NeighborRatio {
                    curve: curve_id(nc.curve),
                    essential: nc.essential,
                    ratio: x2.curve_length(nc.curve) / x1.curve_length(nc.curve),
                })
                .collect();
            let best = neighbors
                .iter()
                .filter(|n| n.essential)
                .fold(None::<&NeighborRatio>, |b, n| match b {
                    Some(b) if b.ratio >= n.ratio => Some(b),
                    _ => Some(n),
                });
            let status = if arc_ratio <= 1.0 {
                ArcStatus::Vacuous
            } else {
                match best {
                    None => ArcStatus::NoEssentialCurve,
                    Some(b) if b.ratio >= required * (1.0 - ARC_CHECK_SLACK) => ArcStatus::Pass,
                    Some(_) => ArcStatus::Fail,
                }
            };
            Ok(ArcCheck {
                arc: a.id(),
                arc_ratio,
                required,
                best_ratio: best.map(|b| b.ratio),
                witness: best.map(|b| b.curve.clone()),
                neighbors,
                status,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ArcVerification {
        constants,
        x1: x1.clone(),
        x2: x2.clone(),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub d_th: f64,
    pub d_a: f64,
    pub difference: f64,
    pub gap: f64,
    pub teich_lo: f64,
    pub teich_hi: f64,
    pub th_witness: String,
    pub a_witness: String,
    pub teich_witness: String,
    /// `d_a ≥ d_th ≥ 0`.
    pub ordered: bool,
}

/// One comparison row: depth-`D` Thurston and arc lower bounds, their
/// difference against `−log C`, and the Teichmüller bracket.
pub fn compare_metrics(x1: &FNPoint, x2: &FNPoint, m: &Marking, depth: u32) -> Result<CompareRow> {
    require_bordered(x1, "compare_metrics")?;
    let th = thurston_lower(x1, x2, m, depth)?;
    let a = arc_lower(x1, x2, m, depth)?;
    let t = teich_interval(x1, x2, m, depth)?;
    let gap = gap_constants(&x1.boundary)?.gap;
    Ok(CompareRow {
        d_th: th.value,
        d_a: a.value,
        difference: a.value - th.value,
        gap,
        teich_lo: t.interval.lo,
        teich_hi: t.interval.hi,
        th_witness: th.witness,
        a_witness: a.witness,
        teich_witness: t.witness,
        ordered: a.value >= th.value && th.value >= 0.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiRow {
    pub s: usize,
    pub parameter: f64,
    pub d_th: f64,
    pub d_th_phi: f64,
    pub difference: f64,
    pub teich: Interval,
    pub teich_phi: Interval,
    /// Smallest `|d_T − d_T^Φ|` consistent with both intervals.
    pub teich_diff_lo: f64,
    /// Largest `|d_T − d_T^Φ|` consistent with both intervals.
    pub teich_diff_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiTable {
    pub x: FNPoint,
    pub ray: RaySpec,
    pub depth: u32,
    pub rows: Vec<PhiRow>,
    pub max_difference: f64,
    pub max_teich_diff_lo: f64,
    /// `log(n+3)`.
    pub teich_bound: f64,
    pub ceiling: f64,
    pub exceeded: bool,
}

fn ray_point(x: &FNPoint, ray: &RaySpec, s: usize) -> (f64, FNPoint) {
    let p = s as f64 * ray.step;
    let mut y = x.clone();
    match ray.kind {
        RayKind::Twist => y.twists[ray.curve] += p,
        RayKind::Length => y.lengths[ray.curve] *= p.exp(),
    }
    (p, y)
}

/// Tabulates `d_Th(X, X_s)` against `d_Th(ΦX, ΦX_s)` along a ray.
pub fn phi_experiment(x: &FNPoint, ray: &RaySpec, m: &Marking, depth: u32, ceiling: f64) -> Result<PhiTable> {
    x.check_against(m)?;
    require_bordered(x, "phi_experiment")?;
    if ray.curve >= x.lengths.len() || ray.count == 0 {
        return Err(Error::Config("ray needs an existing curve and count ≥ 1".into()));
    }
    let px = phi_gamma(x);
    let rows = (0..ray.count)
        .into_par_iter()
        .map(|s| {
            let (parameter, y) = ray_point(x, ray, s);
            let py = phi_gamma(&y);
            let d_th = thurston_lower(x, &y, m, depth)?.value;
            let d_th_phi = thurston_lower(&px, &py, m, depth)?.value;
            let teich = teich_interval(x, &y, m, depth)?.interval;
            let teich_phi = teich_interval(&px, &py, m, depth)?.interval;
            let teich_diff_lo = (teich.lo - teich_phi.hi).max(teich_phi.lo - teich.hi).max(0.0);
            let teich_diff_hi = (teich.hi - teich_phi.lo).max(teich_phi.hi - teich.lo);
            Ok(PhiRow {
                s,
                parameter,
                d_th,
                d_th_phi,
                difference: (d_th - d_th_phi).abs(),
                teich,
                teich_phi,
                teich_diff_lo,
                teich_diff_hi,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_difference = rows.iter().map(|r| r.difference).fold(0.0, f64::max);
    let max_teich_diff_lo = rows.iter().map(|r| r.teich_diff_lo).fold(0.0, f64::max);
    Ok(PhiTable {
        x: x.clone(),
        ray: *ray,
        depth,
        rows,
        max_difference,
        max_teich_diff_lo,
        teich_bound: ((x.n + 3) as f64).ln(),
        ceiling,
        exceeded: max_difference > ceiling,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlmostIsometryReport {
    pub source_metric: SourceMetric,
    pub depth: u32,
    /// `max |d2(f x, f y) − d1(x, y)|` over ordered pairs.
    pub b: f64,
    /// `max_y min_x d2(f x, y)` over the targets.
    pub a: f64,
    pub pairs: usize,
    /// Sample indices attaining `b`.
    pub b_witness: Option<(usize, usize)>,
    /// Target index attaining `a`.
    pub a_witness: Option<usize>,
}

fn source_distance(metric: SourceMetric, x: &FNPoint, y: &FNPoint, m: &Marking, depth: u32) -> Result<f64> {
    Ok(match metric {
        SourceMetric::Arc => arc_lower(x, y, m, depth)?.value,
        SourceMetric::Thurston => thurston_lower(x, y, m, depth)?.value,
    })
}

/// Empirical almost-isometry constants of `Φ_Γ` over `samples`. The targets
/// default to the sample images. Distances entering `a` are floored at 0,
/// which is still a lower bound for the true distance.
pub fn almost_isometry_report(
    samples: &[FNPoint],
    targets: Option<&[FNPoint]>,
    m: &Marking,
    depth: u32,
    metric: SourceMetric,
) -> Result<AlmostIsometryReport> {
    if samples.len() < 2 {
        return Err(crate::error::domain("almost_isometry_report", "need at least 2 samples"));
    }
    for x in samples {
        x.check_against(m)?;
        require_bordered(x, "almost_isometry_report")?;
    }
    let images: Vec<FNPoint> = samples.iter().map(phi_gamma).collect();
    let n = samples.len();
    let grid: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d1 = source_distance(metric, &samples[i], &samples[j], m, depth)?;
                    let d2 = thurston_lower(&images[i], &images[j], m, depth)?.value;
                    Ok((d2 - d1).abs())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut b = 0.0;
    let mut b_witness = None;
    for (i, row) in grid.iter().enumerate() {
        for (jj, &v) in row.iter().enumerate() {
            if b_witness.is_none() || v > b {
                b = v;
                b_witness = Some((i, if jj < i { jj } else { jj + 1 }));
            }
        }
    }
    let targets = targets.unwrap_or(&images);
    let nearest: Vec<f64> = targets
        .par_iter()
        .map(|y| {
            images
                .iter()
                .map(|fx| Ok(thurston_lower(fx, y, m, depth)?.value.max(0.0)))
                .try_fold(f64::INFINITY, |acc, d: Result<f64>| Ok::<_, Error>(acc.min(d?)))
        })
        .collect::<Result<_>>()?;
    let mut a = 0.0;
    let mut a_witness = None;
    for (k, &v) in nearest.iter().enumerate() {
        if a_witness.is_none() || v > a {
            a = v;
            a_witness = Some(k);
        }
    }
    Ok(AlmostIsometryReport {
        source_metric: metric,
        depth,
        b,
        a,
        pairs: n * (n - 1),
        b_witness,
        a_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_marking;

    fn point() -> FNPoint {
        FNPoint::new(1, 2, vec![1.2, 0.7], vec![0.3, -0.5], vec![1.0, 1.0]).unwrap()
    }

    #[test]
    fn identical_points_are_vacuous() {
        let m = build_marking(1, 2).unwrap();
        let v = verify_arc_construction(&point(), &point(), &m, 2).unwrap();
        assert!(v.checks.iter().all(|c| c.status == ArcStatus::Vacuous));
        let row = compare_metrics(&point(), &point(), &m, 2).unwrap();
        assert_eq!((row.d_th, row.d_a, row.difference), (0.0, 0.0, 0.0));
        assert!(row.teich_lo == 0.0 && row.ordered);
    }

    #[test]
    fn ray_starts_at_zero() {
        let m = build_marking(1, 2).unwrap();
        let ray = RaySpec {
            curve: 0,
            step: 0.5,
            count: 3,
            kind: RayKind::Twist,
        };
        let t = phi_experiment(&point(), &ray, &m, 1, 10.0).unwrap();
        let r = &t.rows[0];
        assert_eq!((r.d_th, r.d_th_phi, r.difference, r.teich_diff_lo), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(t.rows.len(), 3);
    }

    #[test]
    fn repeated_sample_has_zero_constants() {
        let m = build_marking(1, 2).unwrap();
        let s = vec![point(); 3];
        let r = almost_isometry_report(&s, None, &m, 1, SourceMetric::Arc).unwrap();
        assert_eq!((r.a, r.b, r.pairs), (0.0, 0.0, 6));
        assert!(almost_isometry_report(&s[..1], None, &m, 1, SourceMetric::Arc).is_err());
    }
}
