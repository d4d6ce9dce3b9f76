//! Combinatorial pants decompositions and the words naming their curves.
//!
//! A [`Marking`] is a trivalent graph: vertices are pants, each with three
//! ordered cuffs; internal edges glue two cuffs (possibly of the same pants)
//! and carry the interior curve `γ_k` with the same index; boundary slots are
//! the cuffs left unglued. Edges flagged `tree` form a spanning tree used to
//! place the pants groups; every other edge contributes an HNN generator.
//!
//! The canonical decomposition is a caterpillar. Its leaves are the `n`
//! boundaries followed by `g` handles (`m = g + n` leaves). A chain of `m − 2`
//! spine pants carries the leaves in order, and each handle leaf is a
//! connector curve to a handle pants whose first two cuffs are glued to each
//! other. The one-holed torus is the single pants `(γ0, γ0, β0)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveRef {
    Interior(usize),
    Boundary(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub pants: usize,
    pub cuff: usize,
}

impl Slot {
    pub const fn new(pants: usize, cuff: usize) -> Self {
        Slot { pants, cuff }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PantsData {
    pub cuffs: [CurveRef; 3],
    /// Orientation-reversed copy (cuff order runs the other way).
    pub mirrored: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeData {
    pub a: Slot,
    pub b: Slot,
    pub tree: bool,
}

impl EdgeData {
    pub fn is_loop(&self) -> bool {
        self.a.pants == self.b.pants
    }
}

/// One generator of the fundamental group, possibly inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Cuff { slot: Slot, inverse: bool },
    Hnn { edge: usize, inverse: bool },
}

impl Letter {
    pub fn cuff(pants: usize, cuff: usize) -> Self {
        Letter::Cuff {
            slot: Slot::new(pants, cuff),
            inverse: false,
        }
    }

    pub fn hnn(edge: usize) -> Self {
        Letter::Hnn { edge, inverse: false }
    }

    pub fn inverse(self) -> Self {
        match self {
            Letter::Cuff { slot, inverse } => Letter::Cuff { slot, inverse: !inverse },
            Letter::Hnn { edge, inverse } => Letter::Hnn { edge, inverse: !inverse },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marking {
    pub g: usize,
    pub n: usize,
    pub pants: Vec<PantsData>,
    /// Edge `k` carries interior curve `γ_k`.
    pub edges: Vec<EdgeData>,
    /// Slot of boundary `β_i`.
    pub boundary: Vec<Slot>,
}

impl Marking {
    pub fn interior_count(&self) -> usize {
        self.edges.len()
    }

    pub fn slot_curve(&self, s: Slot) -> CurveRef {
        self.pants[s.pants].cuffs[s.cuff]
    }

    /// Cuff used to fix the foot of the seam on cuff `i` of pants `p`.
    pub fn reference_cuff(&self, p: usize, i: usize) -> usize {
        if self.pants[p].mirrored {
            (i + 2) % 3
        } else {
            (i + 1) % 3
        }
    }

    /// Crossing letter of an edge: its HNN generator, or nothing for tree edges.
    pub fn crossing(&self, edge: usize) -> Word {
        if self.edges[edge].tree {
            Word::default()
        } else {
            Word(vec![Letter::hnn(edge)])
        }
    }

    pub fn curve_word(&self, c: CurveRef) -> Word {
        let slot = match c {
            CurveRef::Interior(k) => self.edges[k].a,
            CurveRef::Boundary(i) => self.boundary[i],
        };
        Word(vec![Letter::Cuff { slot, inverse: false }])
    }

    /// Marking curve `μ_k`: meets `γ_k` minimally and no other pants curve.
    pub fn marking_word(&self, k: usize) -> Word {
        let e = &self.edges[k];
        if e.is_loop() {
            return self.crossing(k);
        }
        let cross = self.crossing(k);
        Word(vec![Letter::cuff(e.a.pants, (e.a.cuff + 2) % 3)])
            .concat(&cross)
            .concat(&Word(vec![Letter::cuff(e.b.pants, (e.b.cuff + 1) % 3)]))
            .concat(&cross.inverse())
    }

    fn validate(&self) -> Result<()> {
        let mut seen = vec![[false; 3]; self.pants.len()];
        let slots = self
            .edges
            .iter()
            .flat_map(|e| [e.a, e.b])
            .chain(self.boundary.iter().copied());
        for s in slots {
            if s.pants >= self.pants.len() || s.cuff >= 3 || seen[s.pants][s.cuff] {
                return Err(Error::Mismatch(format!("marking slot {s:?} invalid or reused")));
            }
            seen[s.pants][s.cuff] = true;
        }
        if seen.iter().flatten().any(|x| !x) {
            return Err(Error::Mismatch("marking leaves a cuff unassigned".into()));
        }
        for (k, e) in self.edges.iter().enumerate() {
            if self.slot_curve(e.a) != CurveRef::Interior(k) || self.slot_curve(e.b) != CurveRef::Interior(k) {
                return Err(Error::Mismatch(format!("edge {k} endpoints do not carry γ_{k}")));
            }
        }
        Ok(())
    }
}

/// Deterministic canonical pants decomposition of the genus-`g` surface with
/// `n` boundary components.
pub fn build_marking(g: usize, n: usize) -> Result<Marking> {
    if n == 0 {
        return Err(Error::UnsupportedSurface {
            g,
            n,
            reason: "at least one boundary component required",
        });
    }
    let chi = 2 - 2 * g as i64 - n as i64;
    if chi > 0 {
        return Err(Error::UnsupportedSurface {
            g,
            n,
            reason: "positive Euler characteristic",
        });
    }
    if g == 0 && n == 2 {
        return Err(Error::UnsupportedSurface {
            g,
            n,
            reason: "annulus has no pants decomposition",
        });
    }
    let marking = if g == 1 && n == 1 {
        Marking {
            g,
            n,
            pants: vec![PantsData {
                cuffs: [CurveRef::Interior(0), CurveRef::Interior(0), CurveRef::Boundary(0)],
                mirrored: false,
            }],
            edges: vec![EdgeData {
                a: Slot::new(0, 0),
                b: Slot::new(0, 1),
                tree: false,
            }],
            boundary: vec![Slot::new(0, 2)],
        }
    } else {
        caterpillar(g, n)
    };
    marking.validate()?;
    Ok(marking)
}

#[derive(Clone, Copy)]
enum Pending {
    Leaf(usize),
    SpineLeft,
    SpineRight,
}

fn caterpillar(g: usize, n: usize) -> Marking {
    let m = g + n;
    let spine = m - 2;
    let mut layouts = Vec::with_capacity(spine);
    for j in 0..spine {
        let layout = if spine == 1 {
            [Pending::Leaf(0), Pending::Leaf(1), Pending::Leaf(2)]
        } else if j == 0 {
            [Pending::Leaf(0), Pending::Leaf(1), Pending::SpineRight]
        } else if j == spine - 1 {
            [Pending::SpineLeft, Pending::Leaf(m - 2), Pending::Leaf(m - 1)]
        } else {
            [Pending::SpineLeft, Pending::Leaf(j + 1), Pending::SpineRight]
        };
        layouts.push(layout);
    }

    let mut pants: Vec<PantsData> = (0..spine)
        .map(|_| PantsData {
            cuffs: [CurveRef::Boundary(usize::MAX); 3],
            mirrored: false,
        })
        .collect();
    let mut edges: Vec<EdgeData> = Vec::new();
    let mut boundary = vec![Slot::new(0, 0); n];
    let mut spine_edge_to_next: Vec<Option<usize>> = vec![None; spine];

    for (j, layout) in layouts.iter().enumerate() {
        for (slot, item) in layout.iter().enumerate() {
            let here = Slot::new(j, slot);
            match *item {
                Pending::Leaf(leaf) if leaf < n => {
                    pants[j].cuffs[slot] = CurveRef::Boundary(leaf);
                    boundary[leaf] = here;
                }
                Pending::Leaf(_) => {
                    let handle = pants.len();
                    let connector = edges.len();
                    let self_edge = connector + 1;
                    pants[j].cuffs[slot] = CurveRef::Interior(connector);
                    pants.push(PantsData {
                        cuffs: [
                            CurveRef::Interior(self_edge),
                            CurveRef::Interior(self_edge),
                            CurveRef::Interior(connector),
                        ],
                        mirrored: false,
                    });
                    edges.push(EdgeData {
                        a: here,
                        b: Slot::new(handle, 2),
                        tree: true,
                    });
                    edges.push(EdgeData {
                        a: Slot::new(handle, 0),
                        b: Slot::new(handle, 1),
                        tree: false,
                    });
                }
                Pending::SpineRight => {
                    let k = edges.len();
                    pants[j].cuffs[slot] = CurveRef::Interior(k);
                    edges.push(EdgeData {
                        a: here,
                        b: Slot::new(j + 1, 0),
                        tree: true,
                    });
                    spine_edge_to_next[j] = Some(k);
                }
                Pending::SpineLeft => {
                    let k = spine_edge_to_next[j - 1].expect("spine edge allocated by the previous pants");
                    pants[j].cuffs[slot] = CurveRef::Interior(k);
                }
            }
        }
    }
    Marking {
        g,
        n,
        pants,
        edges,
        boundary,
    }
}
