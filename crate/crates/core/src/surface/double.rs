//! Schottky double `X^d = X ∪ X̄` glued along the boundary.
//!
//! Pants `p` of `X` keeps its index; its mirror is `p + m` with cuff `i`
//! moved to position `(−i) mod 3` and the mirrored flag set. Edges are the
//! edges of `X`, then their mirrors (index `k + E`), then one edge per
//! boundary `β_i` (index `2E + i`) joining the cuff to its mirror. Lengths are
//! `(L, L, Λ)` and twists `(T, −T, 0)`, which makes the reflection an isometry.
//! The spanning tree is the tree of `X`, its mirror, and the first boundary
//! edge, so `X`-side words evaluate to the same matrices as on `X`.

use super::fn_point::FNPoint;
use super::holonomy::{curve_length, holonomy, Holonomy};
use super::marking::{CurveRef, EdgeData, Letter, Marking, PantsData, Slot, Word};
use crate::curves::{ArcClass, ArcKind};
use crate::error::{Error, Result};

fn mirror_cuff(i: usize) -> usize {
    (3 - i) % 3
}

/// The reflection of `X^d`, acting on generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Involution {
    pub pants: usize,
    pub edges: usize,
    pub boundaries: usize,
}

impl Involution {
    pub fn apply(&self, l: Letter) -> Letter {
        match l {
            Letter::Cuff { slot, inverse } => {
                let pants = if slot.pants < self.pants {
                    slot.pants + self.pants
                } else {
                    slot.pants - self.pants
                };
                Letter::Cuff {
                    slot: Slot::new(pants, mirror_cuff(slot.cuff)),
                    inverse: !inverse,
                }
            }
            Letter::Hnn { edge, inverse } => {
                if edge < self.edges {
                    Letter::Hnn {
                        edge: edge + self.edges,
                        inverse,
                    }
                } else if edge < 2 * self.edges {
                    Letter::Hnn {
                        edge: edge - self.edges,
                        inverse,
                    }
                } else {
                    Letter::Hnn { edge, inverse: !inverse }
                }
            }
        }
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        Word(w.letters().iter().map(|&l| self.apply(l)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleData {
    pub point: FNPoint,
    pub marking: Marking,
    pub involution: Involution,
}

impl DoubleData {
    /// Edge of `X^d` along which boundary `β_i` of `X` is glued to its mirror.
    pub fn boundary_edge(&self, i: usize) -> usize {
        2 * self.involution.edges + i
    }

    /// Doubled word of a pants-local arc of `X`.
    pub fn arc_word(&self, source: &Marking, a: &ArcClass) -> Result<Word> {
        let boundary_of = |cuff: usize| match source.pants.get(a.pants).map(|p| p.cuffs[cuff]) {
            Some(CurveRef::Boundary(i)) => Ok(i),
            _ => Err(Error::Mismatch(format!(
                "arc endpoint {}.{cuff} is not a boundary cuff",
                a.pants
            ))),
        };
        match a.kind {
            ArcKind::Between { i, j } => {
                let ea = self.boundary_edge(boundary_of(i)?);
                let eb = self.boundary_edge(boundary_of(j)?);
                let w = self.marking.crossing(ea).concat(&self.marking.crossing(eb).inverse());
                if w.is_empty() {
                    return Err(Error::Mismatch("arc endpoints share one boundary edge".into()));
                }
                Ok(w)
            }
            ArcKind::SelfArc { i } => Ok(self.marking.marking_word(self.boundary_edge(boundary_of(i)?))),
        }
    }
}

pub fn double(x: &FNPoint, m: &Marking) -> Result<DoubleData> {
    x.check_against(m)?;
    if let Some(index) = x.boundary.iter().position(|&b| b == 0.0) {
        return Err(Error::PuncturedDouble { index });
    }
    let np = m.pants.len();
    let ne = m.edges.len();
    let nb = m.n;
    let interior = |c: CurveRef, mirror: bool| match c {
        CurveRef::Interior(k) if mirror => CurveRef::Interior(k + ne),
        CurveRef::Interior(k) => CurveRef::Interior(k),
        CurveRef::Boundary(i) => CurveRef::Interior(2 * ne + i),
    };

    let mut pants: Vec<PantsData> = m
        .pants
        .iter()
        .map(|p| PantsData {
            cuffs: p.cuffs.map(|c| interior(c, false)),
            mirrored: p.mirrored,
        })
        .collect();
    for p in &m.pants {
        let mut cuffs = [CurveRef::Interior(0); 3];
        for (i, &c) in p.cuffs.iter().enumerate() {
            cuffs[mirror_cuff(i)] = interior(c, true);
        }
        pants.push(PantsData {
            cuffs,
            mirrored: !p.mirrored,
        });
    }
    let mirror_slot = |s: Slot| Slot::new(s.pants + np, mirror_cuff(s.cuff));
    let mut edges: Vec<EdgeData> = m.edges.clone();
    edges.extend(m.edges.iter().map(|e| EdgeData {
        a: mirror_slot(e.a),
        b: mirror_slot(e.b),
        tree: e.tree,
    }));
    edges.extend(m.boundary.iter().enumerate().map(|(i, &s)| EdgeData {
        a: s,
        b: mirror_slot(s),
        tree: i == 0,
    }));

    let g = 2 * m.g + nb - 1;
    let marking = Marking {
        g,
        n: 0,
        pants,
        edges,
        boundary: Vec::new(),
    };
    let mut lengths = x.lengths.clone();
    lengths.extend_from_slice(&x.lengths);
    lengths.extend_from_slice(&x.boundary);
    let mut twists = x.twists.clone();
    twists.extend(x.twists.iter().map(|t| -t));
    twists.extend(std::iter::repeat_n(0.0, nb));
    let point = FNPoint::new(g, 0, lengths, twists, Vec::new())?;
    Ok(DoubleData {
        point,
        marking,
        involution: Involution {
            pants: np,
            edges: ne,
            boundaries: nb,
        },
    })
}

/// Length of an arc of `X`: half the length of its doubled closed geodesic.
pub fn arc_length(d: &DoubleData, source: &Marking, a: &ArcClass) -> Result<f64> {
    let h = holonomy(&d.point, &d.marking)?;
    arc_length_with(&h, d, source, a)
}

/// As [`arc_length`] with a precomputed holonomy of the double.
pub fn arc_length_with(h: &Holonomy, d: &DoubleData, source: &Marking, a: &ArcClass) -> Result<f64> {
    Ok(curve_length(h, &d.arc_word(source, a)?)? / 2.0)
}
