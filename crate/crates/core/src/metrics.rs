//! Lower bounds for the Thurston and arc metrics over finite families, and
//! bracket arithmetic for extremal lengths and the Teichmüller metric.
//!
//! Every estimate is a maximum of log length ratios over an explicit family
//! and carries the id of the class attaining it. Families are evaluated in
//! parallel; the reduction runs in family order, so ties resolve to the first
//! class and results do not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{arc_length_at, curve_length_at, enumerate_arcs, enumerate_curves, CurveClass};
use crate::error::{domain, Error, Result};
use crate::surface::{FNPoint, Marking};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(domain("Interval::new", format!("[{lo}, {hi}] is not a finite ordered pair")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// `log(hi/lo)` for a positive interval.
    pub fn log_width(&self) -> f64 {
        (self.hi / self.lo).ln()
    }

    pub fn scale(&self, s: f64) -> Interval {
        Interval {
            lo: self.lo * s,
            hi: self.hi * s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricEstimate {
    pub value: f64,
    pub depth: u32,
    pub witness: String,
    pub family_size: usize,
}

impl MetricEstimate {
    /// Estimate on a surface without interior curves, where `T(Λ)` is a point.
    fn trivial(depth: u32) -> Self {
        MetricEstimate {
            value: 0.0,
            depth,
            witness: String::new(),
            family_size: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeichEstimate {
    pub interval: Interval,
    pub depth: u32,
    /// Curve attaining the upper end before the additive constant.
    pub witness: String,
    /// Larger Maskit log-width of the witness on the two surfaces.
    pub witness_log_width: f64,
    pub family_size: usize,
}

pub(crate) fn same_space(x1: &FNPoint, x2: &FNPoint, op: &'static str) -> Result<()> {
    if x1.g != x2.g || x1.n != x2.n || x1.lengths.len() != x2.lengths.len() {
        return Err(Error::Mismatch(format!(
            "{op}: points of types ({}, {}) and ({}, {})",
            x1.g, x1.n, x2.g, x2.n
        )));
    }
    if x1.boundary != x2.boundary {
        return Err(domain(op, "boundary lengths differ"));
    }
    Ok(())
}

/// Interior curves of the twist-orbit family (boundary seeds removed).
pub fn simple_curve_family(m: &Marking, depth: u32) -> Vec<CurveClass> {
    enumerate_curves(m, depth)
        .into_iter()
        .filter(|c| !c.seed.is_boundary())
        .collect()
}

fn family_ratios(x1: &FNPoint, x2: &FNPoint, m: &Marking, family: &[CurveClass]) -> Result<Vec<f64>> {
    family
        .par_iter()
        .map(|c| Ok((curve_length_at(x2, m, c)? / curve_length_at(x1, m, c)?).ln()))
        .collect()
}

fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v > values[b]) {
            best = Some(i);
        }
    }
    best
}

/// `max log(l_{X2}(α)/l_{X1}(α))` over interior curves of the depth-`D`
/// family; a lower bound for `d_Th(X1, X2)`.
pub fn thurston_lower(x1: &FNPoint, x2: &FNPoint, m: &Marking, depth: u32) -> Result<MetricEstimate> {
    same_space(x1, x2, "thurston_lower")?;
    x1.check_against(m)?;
    let family = simple_curve_family(m, depth);
    let ratios = family_ratios(x1, x2, m, &family)?;
    let Some(best) = argmax(&ratios) else {
        return Ok(MetricEstimate::trivial(depth));
    };
    Ok(MetricEstimate {
        value: ratios[best],
        depth,
        witness: family[best].id(),
        family_size: family.len(),
    })
}

/// As [`thurston_lower`] over arcs, boundaries and interior curves; a lower
/// bound for `d_A(X1, X2)`.
pub fn arc_lower(x1: &FNPoint, x2: &FNPoint, m: &Marking, depth: u32) -> Result<MetricEstimate> {
    same_space(x1, x2, "arc_lower")?;
    x1.check_against(m)?;
    if let Some(i) = x1.boundary.iter().position(|&b| b <= 0.0) {
        return Err(domain("arc_lower", format!("boundary {i} is a puncture")));
    }
    let arcs = enumerate_arcs(m, depth);
    let curves = simple_curve_family(m, depth);
    let mut values: Vec<f64> = arcs
        .par_iter()
        .map(|a| Ok((arc_length_at(x2, m, a)? / arc_length_at(x1, m, a)?).ln()))
        .collect::<Result<_>>()?;
    let mut ids: Vec<String> = arcs.iter().map(|a| a.id()).collect();
    for i in 0..m.n {
        values.push((x2.boundary[i] / x1.boundary[i]).ln());
        ids.push(format!("beta{i}"));
    }
    values.extend(family_ratios(x1, x2, m, &curves)?);
    ids.extend(curves.iter().map(|c| c.id()));
    let best = argmax(&values).expect("boundary classes are always present");
    Ok(MetricEstimate {
        value: values[best],
        depth,
        witness: ids.swap_remove(best),
        family_size: values.len(),
    })
}

/// Two-sided bound `[l/π, (l/2)e^{l/2}]` on the extremal length of a curve of
/// hyperbolic length `l`.
pub fn maskit_bracket(l: f64) -> Result<Interval> {
    if !(l.is_finite() && l > 0.0) {
        return Err(domain("maskit_bracket", format!("length {l} must be finite and > 0")));
    }
    Interval::new(l / std::f64::consts::PI, l / 2.0 * (l / 2.0).exp())
}

/// Extremal length of a sum of `k` disjoint curves from brackets for the
/// parts: `[max lo, k² max hi]`.
pub fn ext_sum_bracket(parts: &[Interval], k: usize) -> Result<Interval> {
    if parts.is_empty() || k != parts.len() {
        return Err(domain(
            "ext_sum_bracket",
            format!("{} parts for count {k}", parts.len()),
        ));
    }
    let lo = parts.iter().map(|p| p.lo).fold(f64::NEG_INFINITY, f64::max);
    let hi = parts.iter().map(|p| p.hi).fold(f64::NEG_INFINITY, f64::max);
    Interval::new(lo, (k * k) as f64 * hi)
}

/// Extremal length bracket on a bordered surface from the bracket on its
/// double: `Ext_X = Ext_{X^d} / 2`.
pub fn bracket_from_double(b: Interval) -> Interval {
    b.scale(0.5)
}

/// Extremal length of the core curve of `{r_in < |z| < r_out}`.
pub fn ext_annulus(r_in: f64, r_out: f64) -> Result<f64> {
    if !(r_in > 0.0 && r_in < r_out && r_out.is_finite()) {
        return Err(domain("ext_annulus", format!("need 0 < r_in < r_out, got ({r_in}, {r_out})")));
    }
    Ok(2.0 * std::f64::consts::PI / (r_out / r_in).ln())
}

/// Extremal length of the core of a flat cylinder.
pub fn ext_cylinder(circumference: f64, height: f64) -> Result<f64> {
    if !(circumference > 0.0 && height > 0.0 && circumference.is_finite() && height.is_finite()) {
        return Err(domain(
            "ext_cylinder",
            format!("circumference {circumference} and height {height} must be > 0"),
        ));
    }
    Ok(circumference / height)
}

/// Smallest and largest `|log r|` for `r` in `[lo, hi]`, `0 < lo ≤ hi`.
fn abs_log_range(lo: f64, hi: f64) -> (f64, f64) {
    let (a, b) = (lo.ln(), hi.ln());
    let smallest = if a <= 0.0 && b >= 0.0 { 0.0 } else { a.abs().min(b.abs()) };
    (smallest, a.abs().max(b.abs()))
}

/// Bracket for the Teichmüller distance from Maskit brackets on the curve
/// family: `[s_lo, s_hi + log(n+2)]`, where `s_lo` pairs the bracket ends so
/// each log ratio is as small as possible and `s_hi` so it is as large as
/// possible.
pub fn teich_interval(x1: &FNPoint, x2: &FNPoint, m: &Marking, depth: u32) -> Result<TeichEstimate> {
    same_space(x1, x2, "teich_interval")?;
    x1.check_against(m)?;
    let punctured = x1.boundary.iter().all(|&b| b == 0.0);
    let bordered = x1.boundary.iter().all(|&b| b > 0.0);
    if !(punctured || bordered) {
        return Err(domain("teich_interval", "boundary must be all punctures or all positive"));
    }
    let family = simple_curve_family(m, depth);
    let rows: Vec<(f64, f64, f64)> = family
        .par_iter()
        .map(|c| {
            let b1 = maskit_bracket(curve_length_at(x1, m, c)?)?;
            let b2 = maskit_bracket(curve_length_at(x2, m, c)?)?;
            let (lo, hi) = abs_log_range(b2.lo / b1.hi, b2.hi / b1.lo);
            Ok((lo / 2.0, hi / 2.0, b1.log_width().max(b2.log_width())))
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(TeichEstimate {
            interval: Interval { lo: 0.0, hi: 0.0 },
            depth,
            witness: String::new(),
            witness_log_width: 0.0,
            family_size: 0,
        });
    }
    let lows: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let highs: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let lo = lows[argmax(&lows).expect("family is nonempty")];
    let best = argmax(&highs).expect("family is nonempty");
    let hi = highs[best] + ((m.n + 2) as f64).ln();
    Ok(TeichEstimate {
        interval: Interval::new(lo, hi)?,
        depth,
        witness: family[best].id(),
        witness_log_width: rows[best].2,
        family_size: family.len(),
    })
}

/// `d_L(X, Y) = max{d(X, Y), d(Y, X)}`.
pub fn symmetrize(d_xy: f64, d_yx: f64) -> f64 {
    d_xy.max(d_yx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_marking;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, PI};

    fn point() -> (Marking, FNPoint) {
        (
            build_marking(1, 2).unwrap(),
            FNPoint::new(1, 2, vec![1.1, 0.8], vec![0.37, -0.6], vec![1.0, 1.0]).unwrap(),
        )
    }

    #[test]
    fn maskit_at_two() {
        let b = maskit_bracket(2.0).unwrap();
        assert_relative_eq!(b.lo, 2.0 / PI);
        assert_relative_eq!(b.hi, E);
        assert!(maskit_bracket(0.0).is_err());
    }

    #[test]
    fn maskit_width_shrinks_toward_pi_over_two() {
        for l in [1e-1, 1e-2, 1e-3] {
            let b = maskit_bracket(l).unwrap();
            assert!(b.lo < b.hi);
            assert!((b.hi / b.lo - PI / 2.0 * (l / 2.0).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn sum_bracket() {
        let a = Interval::new(1.0, 2.0).unwrap();
        assert_eq!(ext_sum_bracket(&[a], 1).unwrap(), a);
        assert_eq!(ext_sum_bracket(&[a, a], 2).unwrap(), Interval::new(1.0, 8.0).unwrap());
        assert!(ext_sum_bracket(&[], 0).is_err());
        assert!(ext_sum_bracket(&[a], 2).is_err());
        let b = Interval::new(0.5, 3.0).unwrap();
        let s = ext_sum_bracket(&[a, b], 2).unwrap();
        // both ends dominate the corresponding ends of every part
        assert!([a, b].iter().all(|p| p.lo <= s.lo && p.hi <= s.hi));
        assert_eq!(s.lo, 1.0);
    }

    #[test]
    fn annulus_and_cylinder() {
        let r = |eps: f64| (-2.0 * PI / eps).exp();
        assert_relative_eq!(ext_annulus(r(0.5), r(1.0)).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(ext_annulus(1.0, E).unwrap(), 2.0 * PI, max_relative = 1e-15);
        for eps in [0.1, 0.01] {
            assert!(ext_annulus(r(eps), r(1.0)).unwrap() <= 2.0 * eps);
        }
        assert!(ext_annulus(2.0, 1.0).is_err());
        assert_eq!(ext_cylinder(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(ext_cylinder(3.0, 4.0).unwrap(), ext_cylinder(3.0, 2.0).unwrap() / 2.0);
        // sub-cylinder of height h_sub inside height h
        let (c, h, h_sub) = (2.0, 3.0, 1.2);
        assert_relative_eq!(
            ext_cylinder(c, h_sub).unwrap() / ext_cylinder(c, h).unwrap(),
            h / h_sub,
            max_relative = 1e-15
        );
        assert!(ext_cylinder(0.0, 1.0).is_err());
    }

    #[test]
    fn doubling_halves_brackets() {
        let d = maskit_bracket(3.0).unwrap();
        let b = bracket_from_double(d);
        assert_eq!(b.lo * 2.0, d.lo);
        assert_eq!(b.hi * 2.0, d.hi);
    }

    #[test]
    fn reflexive_estimates() {
        let (m, x) = point();
        assert_eq!(thurston_lower(&x, &x, &m, 2).unwrap().value, 0.0);
        assert_eq!(arc_lower(&x, &x, &m, 2).unwrap().value, 0.0);
        assert!(teich_interval(&x, &x, &m, 2).unwrap().interval.contains(0.0));
    }

    #[test]
    fn scaled_pants_curve_is_witnessed() {
        let (m, x) = point();
        let mut y = x.clone();
        y.lengths[1] *= 3.0;
        let est = thurston_lower(&x, &y, &m, 0).unwrap();
        assert!(est.value >= 3.0f64.ln() - 1e-12);
    }

    #[test]
    fn mismatched_boundary_rejected() {
        let (m, x) = point();
        let mut y = x.clone();
        y.boundary[0] = 2.0;
        assert!(thurston_lower(&x, &y, &m, 1).is_err());
        assert!(arc_lower(&x, &y, &m, 1).is_err());
        assert!(teich_interval(&x, &y, &m, 1).is_err());
    }

    #[test]
    fn arc_metric_needs_positive_boundary() {
        let (m, x) = point();
        let p = crate::surface::phi_gamma(&x);
        assert!(arc_lower(&p, &p, &m, 1).is_err());
        assert!(thurston_lower(&p, &p, &m, 1).is_ok());
        assert!(teich_interval(&p, &p, &m, 1).is_ok());
    }

    #[test]
    fn symmetrize_is_max() {
        assert_eq!(symmetrize(0.0, 0.0), 0.0);
        assert_eq!(symmetrize(1.0, 2.0), symmetrize(2.0, 1.0));
    }

    #[test]
    fn abs_log_range_cases() {
        assert_eq!(abs_log_range(0.5, 2.0).0, 0.0);
        let (lo, hi) = abs_log_range(2.0, 4.0);
        assert_relative_eq!(lo, 2.0f64.ln());
        assert_relative_eq!(hi, 4.0f64.ln());
        let (lo, hi) = abs_log_range(0.25, 0.5);
        assert_relative_eq!(lo, 2.0f64.ln());
        assert_relative_eq!(hi, 4.0f64.ln());
    }
}
