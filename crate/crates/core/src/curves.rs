//! Families of simple closed curves and essential arcs.
//!
//! Curves are twist orbits of seeds. The seeds are the pants curves `γ_k`,
//! the marking curves `μ_k` and the boundaries `β_i`; a class is a seed with
//! an integer Dehn-twist vector. Pants curves and boundaries are fixed by
//! every twist and `μ_k` only feels twists along `γ_k`, so the family keeps
//! `γ_k`, `β_i` untwisted and `μ_k` with twists supported on entry `k`.
//!
//! Lengths of twisted classes use `l_X(τ^k μ) = l_{τ^{−k} X}(μ)`: the seed
//! word is evaluated at the point with twists `T − k∘L`.
//!
//! Arcs are the orthogeodesics of the decomposition pants with both ends on
//! boundaries of the surface: one between each pair of boundary cuffs of a
//! pants, and one from each boundary cuff to itself separating the other two.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pants_trig::{orthogeodesic_between, orthogeodesic_self};
use crate::surface::{curve_length, holonomy, CurveRef, FNPoint, Marking, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Seed {
    Pants(usize),
    Marking(usize),
    Boundary(usize),
}

impl Seed {
    pub fn is_boundary(&self) -> bool {
        matches!(self, Seed::Boundary(_))
    }

    pub fn is_twist_invariant(&self) -> bool {
        !matches!(self, Seed::Marking(_))
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Pants(k) => write!(f, "gamma{k}"),
            Seed::Marking(k) => write!(f, "mu{k}"),
            Seed::Boundary(i) => write!(f, "beta{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    pub seed: Seed,
    pub twist: Vec<i64>,
}

impl CurveClass {
    pub fn id(&self) -> String {
        if self.twist.iter().all(|&k| k == 0) {
            return self.seed.to_string();
        }
        let parts: Vec<String> = self.twist.iter().map(|k| k.to_string()).collect();
        format!("{}[{}]", self.seed, parts.join(","))
    }
}

pub fn seed_word(m: &Marking, seed: Seed) -> Word {
    match seed {
        Seed::Pants(k) => m.curve_word(CurveRef::Interior(k)),
        Seed::Marking(k) => m.marking_word(k),
        Seed::Boundary(i) => m.curve_word(CurveRef::Boundary(i)),
    }
}

pub fn seeds(m: &Marking) -> Vec<Seed> {
    let k = m.interior_count();
    (0..k)
        .map(Seed::Pants)
        .chain((0..k).map(Seed::Marking))
        .chain((0..m.n).map(Seed::Boundary))
        .collect()
}

/// Number of (seed, twist-vector) pairs before deduplication.
pub fn raw_family_size(m: &Marking, depth: u32) -> u128 {
    let side = 2 * depth as u128 + 1;
    seeds(m).len() as u128 * side.pow(m.interior_count() as u32)
}

/// Twist orbits of the seeds with twist sup-norm at most `depth`, one entry
/// per distinct curve, in seed order.
pub fn enumerate_curves(m: &Marking, depth: u32) -> Vec<CurveClass> {
    let k = m.interior_count();
    let d = depth as i64;
    let mut out = Vec::new();
    for seed in seeds(m) {
        match seed {
            Seed::Marking(j) => {
                for a in -d..=d {
                    let mut twist = vec![0; k];
                    twist[j] = a;
                    out.push(CurveClass { seed, twist });
                }
            }
            _ => out.push(CurveClass {
                seed,
                twist: vec![0; k],
            }),
        }
    }
    out
}

/// Point with twists `T − k∘L`, at which the seed has the length of the class.
pub fn shifted_point(x: &FNPoint, c: &CurveClass) -> FNPoint {
    let twists = x
        .twists
        .iter()
        .zip(&x.lengths)
        .zip(&c.twist)
        .map(|((t, l), &k)| t - k as f64 * l)
        .collect();
    x.with_twists(twists)
}

pub fn curve_length_at(x: &FNPoint, m: &Marking, c: &CurveClass) -> Result<f64> {
    if c.twist.len() != m.interior_count() {
        return Err(Error::Mismatch(format!(
            "twist vector of length {} for {} pants curves",
            c.twist.len(),
            m.interior_count()
        )));
    }
    match c.seed {
        Seed::Pants(k) => return Ok(x.lengths[k]),
        Seed::Boundary(i) => return Ok(x.boundary[i]),
        Seed::Marking(_) => {}
    }
    let shifted = shifted_point(x, c);
    curve_length(&holonomy(&shifted, m)?, &seed_word(m, c.seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcKind {
    /// Between cuffs `i < j` of the pants.
    Between { i: usize, j: usize },
    /// From cuff `i` to itself, separating the other two cuffs.
    SelfArc { i: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcClass {
    pub pants: usize,
    pub kind: ArcKind,
}

impl ArcClass {
    pub fn id(&self) -> String {
        match self.kind {
            ArcKind::Between { i, j } => format!("arc{}:{}-{}", self.pants, i, j),
            ArcKind::SelfArc { i } => format!("arc{}:{}", self.pants, i),
        }
    }
}

/// Pants-local arcs with both ends on the boundary. The family does not grow
/// with `depth`.
pub fn enumerate_arcs(m: &Marking, _depth: u32) -> Vec<ArcClass> {
    let mut out = Vec::new();
    for (p, pants) in m.pants.iter().enumerate() {
        let ends: Vec<usize> = (0..3)
            .filter(|&i| matches!(pants.cuffs[i], CurveRef::Boundary(_)))
            .collect();
        for (a, &i) in ends.iter().enumerate() {
            for &j in &ends[a + 1..] {
                out.push(ArcClass {
                    pants: p,
                    kind: ArcKind::Between { i, j },
                });
            }
        }
        for &i in &ends {
            out.push(ArcClass {
                pants: p,
                kind: ArcKind::SelfArc { i },
            });
        }
    }
    out
}

/// Closed-form length of a pants-local arc. Geodesic pants are convex, so
/// this does not depend on the twists.
pub fn arc_length_at(x: &FNPoint, m: &Marking, a: &ArcClass) -> Result<f64> {
    let cuffs = m.pants[a.pants].cuffs;
    let l = |i: usize| x.curve_length(cuffs[i]);
    match a.kind {
        ArcKind::Between { i, j } => orthogeodesic_between(l(i), l(j), l(3 - i - j)),
        ArcKind::SelfArc { i } => orthogeodesic_self(l(i), l((i + 1) % 3), l((i + 2) % 3)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodCurve {
    pub curve: CurveRef,
    /// False when the curve is a boundary component (boundary-parallel).
    pub essential: bool,
}

/// Boundary curves of the pants swept out by `a` and the boundaries it meets,
/// other than those boundaries: one curve for an arc between two boundaries,
/// two for an arc from a boundary to itself.
pub fn pants_neighborhood_boundaries(a: &ArcClass, m: &Marking) -> Vec<NeighborhoodCurve> {
    let cuffs = m.pants[a.pants].cuffs;
    let wrap = |c: CurveRef| NeighborhoodCurve {
        curve: c,
        essential: matches!(c, CurveRef::Interior(_)),
    };
    match a.kind {
        ArcKind::Between { i, j } => vec![wrap(cuffs[3 - i - j])],
        ArcKind::SelfArc { i } => vec![wrap(cuffs[(i + 1) % 3]), wrap(cuffs[(i + 2) % 3])],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_marking;
    use approx::assert_relative_eq;
    use std::collections::HashSet;

    #[test]
    fn depth_zero_gives_seeds() {
        let m = build_marking(1, 2).unwrap();
        let fam = enumerate_curves(&m, 0);
        let s: Vec<Seed> = fam.iter().map(|c| c.seed).collect();
        assert_eq!(s, seeds(&m));
        assert!(fam.iter().all(|c| c.twist.iter().all(|&k| k == 0)));
    }

    #[test]
    fn family_sizes() {
        let m = build_marking(1, 2).unwrap();
        assert_eq!(raw_family_size(&m, 2), 6 * 25);
        assert_eq!(enumerate_curves(&m, 2).len(), 2 + 2 * 5 + 2);
    }

    #[test]
    fn nested_in_depth() {
        let m = build_marking(2, 1).unwrap();
        for d in 0..3 {
            let small: HashSet<_> = enumerate_curves(&m, d).into_iter().collect();
            let big: HashSet<_> = enumerate_curves(&m, d + 1).into_iter().collect();
            assert!(small.is_subset(&big));
        }
    }

    #[test]
    fn no_duplicates() {
        let m = build_marking(2, 2).unwrap();
        let fam = enumerate_curves(&m, 3);
        let set: HashSet<_> = fam.iter().collect();
        assert_eq!(set.len(), fam.len());
    }

    #[test]
    fn arc_counts() {
        assert_eq!(enumerate_arcs(&build_marking(0, 3).unwrap(), 0).len(), 6);
        let torus = enumerate_arcs(&build_marking(1, 1).unwrap(), 0);
        assert_eq!(torus, vec![ArcClass { pants: 0, kind: ArcKind::SelfArc { i: 2 } }]);
        assert_eq!(enumerate_arcs(&build_marking(1, 2).unwrap(), 0).len(), 3);
    }

    #[test]
    fn pants_curve_length_ignores_twist() {
        let m = build_marking(1, 2).unwrap();
        let x = FNPoint::new(1, 2, vec![1.1, 0.8], vec![0.3, 0.2], vec![1.0, 1.0]).unwrap();
        let c = CurveClass {
            seed: Seed::Pants(1),
            twist: vec![3, -2],
        };
        assert_eq!(curve_length_at(&x, &m, &c).unwrap(), 0.8);
    }

    #[test]
    fn untwisted_marking_curve_is_plain_length() {
        let m = build_marking(1, 2).unwrap();
        let x = FNPoint::new(1, 2, vec![1.1, 0.8], vec![0.3, 0.2], vec![1.0, 1.0]).unwrap();
        let c = CurveClass {
            seed: Seed::Marking(0),
            twist: vec![0, 0],
        };
        let direct = curve_length(&holonomy(&x, &m).unwrap(), &m.marking_word(0)).unwrap();
        assert_eq!(curve_length_at(&x, &m, &c).unwrap(), direct);
    }

    #[test]
    fn neighborhood_of_pants_arcs() {
        let m = build_marking(1, 2).unwrap();
        let between = ArcClass {
            pants: 0,
            kind: ArcKind::Between { i: 0, j: 1 },
        };
        assert_eq!(
            pants_neighborhood_boundaries(&between, &m),
            vec![NeighborhoodCurve {
                curve: CurveRef::Interior(0),
                essential: true
            }]
        );
        let own = ArcClass {
            pants: 0,
            kind: ArcKind::SelfArc { i: 0 },
        };
        let nb = pants_neighborhood_boundaries(&own, &m);
        assert_eq!(nb.len(), 2);
        assert!(!nb[0].essential && nb[1].essential);
    }

    #[test]
    fn class_ids() {
        let c = CurveClass {
            seed: Seed::Marking(1),
            twist: vec![0, -2],
        };
        assert_eq!(c.id(), "mu1[0,-2]");
        assert_eq!(
            CurveClass {
                seed: Seed::Pants(0),
                twist: vec![0, 0]
            }
            .id(),
            "gamma0"
        );
    }

    #[test]
    fn closed_form_arc_is_twist_free() {
        let m = build_marking(1, 2).unwrap();
        let x = FNPoint::new(1, 2, vec![1.1, 0.8], vec![0.3, 0.2], vec![1.0, 1.2]).unwrap();
        let y = x.with_twists(vec![2.0, -4.0]);
        for a in enumerate_arcs(&m, 0) {
            assert_relative_eq!(arc_length_at(&x, &m, &a).unwrap(), arc_length_at(&y, &m, &a).unwrap());
        }
    }
}
