//! Closed-form trigonometry of hyperbolic pairs of pants, and the explicit
//! constants comparing arc lengths with the lengths of the curves bounding
//! the pants an arc determines.
//!
//! # Arcs between two boundaries
//!
//! An orthogeodesic `γ` between distinct boundaries `βi`, `βj` of a pants
//! whose third boundary is `α` satisfies
//!
//! ```text
//! cosh l(γ) = (cosh(λi/2) cosh(λj/2) + cosh(l(α)/2)) / (sinh(λi/2) sinh(λj/2))
//! ```
//!
//! With `λ = max over pairs of {sinh sinh, (cosh cosh + 1)/(sinh sinh)}` this
//! gives `e^{l(α)/2}/(2λ) ≤ cosh l(γ) ≤ λ e^{l(α)/2}` and hence
//! `|l(α) − 2 l(γ)| ≤ 2K` with `K = log 2λ`.
//!
//! The ratio bound `l(γ) ≤ l(α) ≤ 3 l(γ)` follows from that bracket only once
//! `l(γ) ≥ 2K`; at `l(γ) = K` it can fail (for `Λ = (2, 2)` the ratio is about
//! 0.67). [`Case1Constants`] therefore splits at the threshold `T = 2K`:
//!
//! * both arc lengths `≥ T`: the curve ratio is at least `1/3` of the arc ratio;
//! * `l₂(γ) ≥ T ≥ l₁(γ)`: `l₂(α) ≥ l₂(γ)` and `l₁(α) ≤ x0`, where
//!   `x0 = 2 max arccosh(sinh sinh · cosh T − cosh cosh)` is the largest third
//!   boundary compatible with `l(γ) ≤ T`; the factor is `r0/x0`;
//! * both `≤ T`: `l(α)` is increasing in `l(γ)` so the curve ratio exceeds 1,
//!   while the arc ratio is at most `T/r0`.
//!
//! Here `r0 = min arccosh(cosh cosh / (sinh sinh))` lower-bounds every such arc.
//! The constant valid in all three subcases is `C1 = min{1/3, r0/x0, r0/T}`.
//!
//! # Arcs from a boundary to itself
//!
//! For `γ` from `βi` to itself, with `α`, `δ` the other boundaries of the pants,
//!
//! ```text
//! cosh²(l(γ)/2) = [cosh(l(δ)/2) + cosh(l(α)/2 + λi/2)] [cosh(l(δ)/2) + cosh(l(α)/2 − λi/2)] / sinh²(λi/2)
//! ```
//!
//! Bounding `cosh(l(α)/2 ± λi/2)` by `e^{±λi/2} cosh(l(α)/2)` and comparing
//! `cosh(x/2)` with `e^{x/2}` gives, for `m = max{l(α), l(δ)}`,
//!
//! ```text
//! 2 log(e^{−λi/2} / (2 sinh(λi/2))) ≤ l(γ) − m ≤ 2 log(4 e^{λi/2} / sinh(λi/2))
//! ```
//!
//! (the same expressions without the factor 2 are not valid bounds; see
//! [`case2_bracket_unscaled`]). Let `K2` be the largest absolute value of
//! these bounds over the entries of `Λ`, and `r2 = min 2 arcsinh(1/sinh(λi/2))`
//! the floor on `l(γ)`. Splitting at `T2 = 2K2` gives `m ∈ [l(γ)/2, 3l(γ)/2]`
//! above the threshold and `m ≤ 3K2` below it; since `l(γ)` is increasing in
//! both `l(α)` and `l(δ)`, one of the individual curve ratios always exceeds
//! `max(1, m₂/m₁)`. The three subcases give factors `1/3`, `r2/(6K2)` and
//! `r2/(2K2)`, so `C2 = min{1/3, r2/(6K2)}`.
//!
//! The sound constant for every arc is `C = min{C1, C2}`.
//!
//! All evaluations are plain `f64`; cross-checks against holonomy traces are
//! made at relative tolerance 1e-9.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Boundary lengths of one pair of pants; zero encodes a cusp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PantsBoundary {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

impl PantsBoundary {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        for l in [l1, l2, l3] {
            if !l.is_finite() || l < 0.0 {
                return Err(domain("PantsBoundary::new", format!("length {l} must be finite and ≥ 0")));
            }
        }
        Ok(PantsBoundary { l1, l2, l3 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.l1, self.l2, self.l3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Case1Constants {
    pub lambda: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub r0: f64,
    /// Splitting threshold `2K` for the arc-length trichotomy.
    pub threshold: f64,
    pub x0: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Case2Constants {
    /// `K2`: largest absolute bound on `l(γ) − max{l(α), l(δ)}`.
    pub spread: f64,
    /// `r2`: floor on the length of an arc from a boundary to itself.
    pub floor: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapConstants {
    #[serde(rename = "C1")]
    pub c1: Option<f64>,
    #[serde(rename = "C2")]
    pub c2: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub gap: f64,
}

impl GapConstants {
    pub fn from_parts(c1: Option<f64>, c2: f64) -> Self {
        let c = match c1 {
            Some(c1) => c1.min(c2),
            None => c2,
        };
        GapConstants {
            c1,
            c2,
            c,
            gap: -c.ln(),
        }
    }
}

fn half_sinh_cosh(l: f64) -> (f64, f64) {
    ((l / 2.0).sinh(), (l / 2.0).cosh())
}

fn check_positive(op: &'static str, name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(domain(op, format!("{name} = {v} must be finite and > 0")));
    }
    Ok(())
}

/// Length of the orthogeodesic between boundaries of lengths `li`, `lj`
/// in a pants with third boundary of length `la`.
pub fn orthogeodesic_between(li: f64, lj: f64, la: f64) -> Result<f64> {
    const OP: &str = "orthogeodesic_between";
    check_positive(OP, "li", li)?;
    check_positive(OP, "lj", lj)?;
    if !(la.is_finite() && la >= 0.0) {
        return Err(domain(OP, format!("la = {la} must be finite and ≥ 0")));
    }
    let (si, ci) = half_sinh_cosh(li);
    let (sj, cj) = half_sinh_cosh(lj);
    Ok(((ci * cj + (la / 2.0).cosh()) / (si * sj)).acosh())
}

/// Shortest possible orthogeodesic between boundaries `li`, `lj`, attained
/// when the third boundary is a cusp.
pub fn minimal_arc_between(li: f64, lj: f64) -> Result<f64> {
    orthogeodesic_between(li, lj, 0.0)
}

/// Inverse of [`orthogeodesic_between`] in its third argument.
pub fn third_boundary_from_arc(li: f64, lj: f64, lg: f64) -> Result<f64> {
    const OP: &str = "third_boundary_from_arc";
    check_positive(OP, "li", li)?;
    check_positive(OP, "lj", lj)?;
    check_positive(OP, "lg", lg)?;
    let (si, ci) = half_sinh_cosh(li);
    let (sj, cj) = half_sinh_cosh(lj);
    let arg = lg.cosh() * si * sj - ci * cj;
    if arg < 1.0 - 1e-12 {
        return Err(Error::ArcTooShort {
            li,
            lj,
            length: lg,
            minimal: minimal_arc_between(li, lj)?,
        });
    }
    Ok(2.0 * arg.max(1.0).acosh())
}

/// Length of the orthogeodesic from a boundary of length `li` to itself,
/// separating the other two boundaries (`la`, `ld`).
pub fn orthogeodesic_self(li: f64, la: f64, ld: f64) -> Result<f64> {
    const OP: &str = "orthogeodesic_self";
    check_positive(OP, "li", li)?;
    check_positive(OP, "la", la)?;
    check_positive(OP, "ld", ld)?;
    Ok(orthogeodesic_self_unchecked(li, la, ld))
}

/// As [`orthogeodesic_self`] but allowing cusps (`la` or `ld` = 0).
pub(crate) fn orthogeodesic_self_unchecked(li: f64, la: f64, ld: f64) -> f64 {
    let cd = (ld / 2.0).cosh();
    let si = (li / 2.0).sinh();
    let v = (cd + (la / 2.0 + li / 2.0).cosh()) * (cd + (la / 2.0 - li / 2.0).cosh()) / (si * si);
    2.0 * v.sqrt().acosh()
}

/// Two-sided bound on `cosh l(γ)` for an arc between distinct boundaries.
pub fn eq31_bracket(la: f64, lambda: f64) -> (f64, f64) {
    let e = (la / 2.0).exp();
    (e / (2.0 * lambda), lambda * e)
}

/// Valid bound on `l(γ) − max{l(α), l(δ)}` for an arc from `βi` to itself.
pub fn case2_bracket(li: f64) -> (f64, f64) {
    let (lo, hi) = case2_bracket_unscaled(li);
    (2.0 * lo, 2.0 * hi)
}

/// `log(e^{−λ/2}/(2 sinh(λ/2)))` and `log(4 e^{λ/2}/sinh(λ/2))` as written,
/// without the factor 2 coming from the half-length. Arcs with short
/// neighbours violate these; kept to measure that.
pub fn case2_bracket_unscaled(li: f64) -> (f64, f64) {
    let s = (li / 2.0).sinh();
    let lo = ((-li / 2.0).exp() / (2.0 * s)).ln();
    let hi = (4.0 * (li / 2.0).exp() / s).ln();
    (lo, hi)
}

/// Lower bound `2 arcsinh(1/sinh(λi/2))` on any arc from `βi` to itself.
pub fn self_arc_floor(li: f64) -> f64 {
    2.0 * (1.0 / (li / 2.0).sinh()).asinh()
}

fn check_boundary_vector(op: &'static str, lambda: &[f64]) -> Result<()> {
    if lambda.is_empty() {
        return Err(domain(op, "boundary vector is empty"));
    }
    for &l in lambda {
        check_positive(op, "boundary length", l)?;
    }
    Ok(())
}

pub fn case1_constants(lambda: &[f64]) -> Result<Case1Constants> {
    const OP: &str = "case1_constants";
    check_boundary_vector(OP, lambda)?;
    if lambda.len() < 2 {
        return Err(Error::NoBoundaryPair { n: lambda.len() });
    }
    let hs: Vec<(f64, f64)> = lambda.iter().map(|&l| half_sinh_cosh(l)).collect();
    let count = hs.len();
    let pairs = move || (0..count).flat_map(move |i| (0..count).filter(move |&j| j != i).map(move |j| (i, j)));

    let mut big_lambda = f64::NEG_INFINITY;
    let mut r0 = f64::INFINITY;
    for (i, j) in pairs() {
        let s = hs[i].0 * hs[j].0;
        let c = hs[i].1 * hs[j].1;
        big_lambda = big_lambda.max(s).max((c + 1.0) / s);
        r0 = r0.min((c / s).acosh());
    }
    let k = (2.0 * big_lambda).ln();
    let threshold = 2.0 * k;
    let mut x0 = f64::NEG_INFINITY;
    for (i, j) in pairs() {
        let s = hs[i].0 * hs[j].0;
        let c = hs[i].1 * hs[j].1;
        let argument = s * threshold.cosh() - c;
        if !(argument >= 1.0) {
            return Err(Error::X0Undefined { argument });
        }
        x0 = x0.max(2.0 * argument.acosh());
    }
    let c1 = (1.0f64 / 3.0).min(r0 / x0).min(r0 / threshold);
    Ok(Case1Constants {
        lambda: big_lambda,
        k,
        r0,
        threshold,
        x0,
        c1,
    })
}

pub fn case2_constants(lambda: &[f64]) -> Result<Case2Constants> {
    check_boundary_vector("case2_constants", lambda)?;
    let mut spread = 0.0f64;
    let mut floor = f64::INFINITY;
    for &l in lambda {
        let (lo, hi) = case2_bracket(l);
        spread = spread.max(hi).max(-lo);
        floor = floor.min(self_arc_floor(l));
    }
    let c2 = (1.0f64 / 3.0).min(floor / (6.0 * spread));
    Ok(Case2Constants { spread, floor, c2 })
}

pub fn gap_constants(lambda: &[f64]) -> Result<GapConstants> {
    let c2 = case2_constants(lambda)?.c2;
    let c1 = match case1_constants(lambda) {
        Ok(c) => Some(c.c1),
        Err(Error::NoBoundaryPair { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(GapConstants::from_parts(c1, c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Reference values from a 30-digit mpmath evaluation of the defining formulas.
    const ARC_222: f64 = 1.704_912_832_358_013_7;
    const LAMBDA_22: f64 = 2.448_123_321_932_620_9;
    const K_22: f64 = 1.588_468_920_547_629_1;
    const R0_22: f64 = 1.140_547_006_386_197_3;
    const MIN_ARC_22: f64 = 1.543_873_665_810_609_5;

    #[test]
    fn between_is_symmetric() {
        let a = orthogeodesic_between(1.0, 3.0, 2.0).unwrap();
        let b = orthogeodesic_between(3.0, 1.0, 2.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn between_reference_value() {
        assert_relative_eq!(orthogeodesic_between(2.0, 2.0, 2.0).unwrap(), ARC_222, max_relative = 1e-14);
    }

    #[test]
    fn between_rejects_cusp_endpoints() {
        assert!(matches!(orthogeodesic_between(0.0, 1.0, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(orthogeodesic_between(1.0, -1.0, 1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn between_bracket_on_sample_lengths() {
        let c = case1_constants(&[2.0, 2.0]).unwrap();
        for la in [1.0, 4.0, 8.0] {
            let lg = orthogeodesic_between(2.0, 2.0, la).unwrap();
            let (lo, hi) = eq31_bracket(la, c.lambda);
            assert!(lo <= lg.cosh() && lg.cosh() <= hi, "la = {la}");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let lg = orthogeodesic_between(2.0, 2.0, 2.0).unwrap();
        assert_relative_eq!(third_boundary_from_arc(2.0, 2.0, lg).unwrap(), 2.0, max_relative = 1e-12);
        let la = third_boundary_from_arc(1.0, 3.0, 5.0).unwrap();
        assert_relative_eq!(orthogeodesic_between(1.0, 3.0, la).unwrap(), 5.0, max_relative = 1e-12);
    }

    #[test]
    fn inverse_at_minimal_arc_is_cusp() {
        assert_relative_eq!(minimal_arc_between(2.0, 2.0).unwrap(), MIN_ARC_22, max_relative = 1e-14);
        let la = third_boundary_from_arc(2.0, 2.0, MIN_ARC_22).unwrap();
        assert!(la.abs() < 1e-6, "la = {la}");
    }

    #[test]
    fn r0_is_below_the_feasible_minimum() {
        let c = case1_constants(&[2.0, 2.0]).unwrap();
        assert!(c.r0 < MIN_ARC_22);
        match third_boundary_from_arc(2.0, 2.0, c.r0) {
            Err(Error::ArcTooShort { minimal, .. }) => {
                assert_relative_eq!(minimal, MIN_ARC_22, max_relative = 1e-14)
            }
            other => panic!("expected ArcTooShort, got {other:?}"),
        }
    }

    #[test]
    fn self_arc_symmetric_in_neighbours() {
        let a = orthogeodesic_self(1.0, 2.0, 3.0).unwrap();
        let b = orthogeodesic_self(1.0, 3.0, 2.0).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-15);
    }

    #[test]
    fn case1_reference_constants() {
        let c = case1_constants(&[2.0, 2.0]).unwrap();
        assert_relative_eq!(c.lambda, LAMBDA_22, max_relative = 1e-14);
        assert_relative_eq!(c.k, K_22, max_relative = 1e-14);
        assert_relative_eq!(c.r0, R0_22, max_relative = 1e-14);
        assert!(c.r0 <= c.x0);
        assert!(c.c1 > 0.0 && c.c1 <= 1.0 / 3.0);
    }

    #[test]
    fn case1_depends_on_pair_values_only() {
        let a = case1_constants(&[2.0, 2.0]).unwrap();
        let b = case1_constants(&[2.0, 2.0, 2.0]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn case1_requires_two_boundaries() {
        assert_eq!(case1_constants(&[2.0]), Err(Error::NoBoundaryPair { n: 1 }));
        assert!(matches!(case1_constants(&[2.0, 0.0]), Err(Error::Domain { .. })));
    }

    #[test]
    fn ratio_bound_fails_at_single_threshold() {
        // At l(γ) = K the third boundary is shorter than the arc.
        let c = case1_constants(&[2.0, 2.0]).unwrap();
        let la = third_boundary_from_arc(2.0, 2.0, c.k).unwrap();
        assert!(la / c.k < 1.0);
        let la = third_boundary_from_arc(2.0, 2.0, c.threshold).unwrap();
        assert!(la / c.threshold >= 1.0);
    }

    #[test]
    fn case2_single_boundary() {
        let c = case2_constants(&[2.0]).unwrap();
        assert!(c.c2 > 0.0 && c.c2 <= 1.0);
        let g = gap_constants(&[2.0]).unwrap();
        assert_eq!(g.c1, None);
        assert_eq!(g.c, c.c2);
    }

    #[test]
    fn case2_permutation_invariant() {
        let a = case2_constants(&[0.5, 2.0, 3.0]).unwrap();
        let b = case2_constants(&[3.0, 0.5, 2.0]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gap_for_two_boundaries() {
        let g = gap_constants(&[2.0, 2.0]).unwrap();
        let c1 = case1_constants(&[2.0, 2.0]).unwrap().c1;
        let c2 = case2_constants(&[2.0, 2.0]).unwrap().c2;
        assert_eq!(g.c, c1.min(c2));
        assert_relative_eq!(g.gap, -(c1.min(c2)).ln(), max_relative = 1e-15);
        assert!(g.gap > 0.0);
    }

    #[test]
    fn gap_of_unit_constants_is_zero() {
        let g = GapConstants::from_parts(Some(1.0), 1.0);
        assert_eq!(g.gap, 0.0);
    }

    #[test]
    fn gap_permutation_invariant() {
        assert_eq!(gap_constants(&[1.0, 2.5, 0.7]).unwrap(), gap_constants(&[0.7, 1.0, 2.5]).unwrap());
    }

    #[test]
    fn unscaled_case2_bracket_is_violated_by_short_neighbours() {
        let lg = orthogeodesic_self(2.0, 0.01, 0.01).unwrap();
        let (_, hi) = case2_bracket_unscaled(2.0);
        assert!(lg - 0.01 > hi);
        let (_, hi) = case2_bracket(2.0);
        assert!(lg - 0.01 <= hi);
    }

    fn length() -> impl Strategy<Value = f64> {
        (-2.5f64..2.5).prop_map(f64::exp)
    }

    proptest! {
        #[test]
        fn between_bracket_holds(li in length(), lj in length(), la in 0.0f64..12.0) {
            let c = case1_constants(&[li, lj]).unwrap();
            let lg = orthogeodesic_between(li, lj, la).unwrap();
            let (lo, hi) = eq31_bracket(la, c.lambda);
            let ch = lg.cosh();
            prop_assert!(lo <= ch * (1.0 + 1e-12) && ch <= hi * (1.0 + 1e-12));
        }

        #[test]
        fn between_strictly_increasing(li in length(), lj in length(), la in 0.0f64..10.0, d in 0.01f64..2.0) {
            let a = orthogeodesic_between(li, lj, la).unwrap();
            let b = orthogeodesic_between(li, lj, la + d).unwrap();
            prop_assert!(b > a);
        }

        #[test]
        fn inverse_roundtrip_prop(li in length(), lj in length(), la in 0.05f64..10.0) {
            let lg = orthogeodesic_between(li, lj, la).unwrap();
            let back = third_boundary_from_arc(li, lj, lg).unwrap();
            prop_assert!((back - la).abs() <= 1e-12 * la.max(1.0) * 100.0);
        }

        #[test]
        fn ratio_bound_above_doubled_threshold(li in length(), lj in length(), extra in 0.0f64..10.0) {
            let c = case1_constants(&[li, lj]).unwrap();
            let lg = c.threshold + extra;
            let la = third_boundary_from_arc(li, lj, lg).unwrap();
            let ratio = la / lg;
            prop_assert!((1.0 - 1e-12..=3.0 + 1e-12).contains(&ratio), "ratio {}", ratio);
        }

        #[test]
        fn self_arc_bracket_and_floor(li in length(), la in length(), ld in length()) {
            let lg = orthogeodesic_self(li, la, ld).unwrap();
            let (lo, hi) = case2_bracket(li);
            let diff = lg - la.max(ld);
            prop_assert!(lo - 1e-12 <= diff && diff <= hi + 1e-12);
            prop_assert!(lg >= self_arc_floor(li) * (1.0 - 1e-12));
        }

        #[test]
        fn constants_ordering(l in proptest::collection::vec(length(), 2..5)) {
            let c = case1_constants(&l).unwrap();
            prop_assert!(c.r0 <= c.x0);
            prop_assert!((c.k - (2.0 * c.lambda).ln()).abs() < 1e-15);
            let g = gap_constants(&l).unwrap();
            prop_assert!(g.gap >= 0.0);
            prop_assert!(g.c <= c.c1 && g.c <= g.c2);
        }
    }
}
