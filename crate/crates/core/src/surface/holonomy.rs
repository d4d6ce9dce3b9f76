//! Holonomy representations assembled from pants groups.
//!
//! Each pants with cuff lengths `(l0, l1, l2)` gets the normal form
//! `c0 = [[x, −1], [1, 0]]`, `c1 = [[0, s], [−1/s, y]]`, `c2 = (c0 c1)^{-1}` with
//! `x = 2cosh(l0/2)`, `y = 2cosh(l1/2)`, `s + 1/s = −2cosh(l2/2)`, so that
//! `c0 c1 c2 = I` and `|tr ci| = 2cosh(li/2)`; a zero length gives a parabolic.
//!
//! Gluing cuff `P.i` to `Q.j` uses normalizers: for a cuff `c` with reference
//! cuff `r` (the next cuff, or the previous one in a mirrored pants), `N` maps
//! the axis of `c` to the imaginary axis and the foot of the common
//! perpendicular from `r` to `i`. The pants `Q` is then placed by
//! `N_P^{-1} D(t) S N_Q`, where `D(t)` translates by the twist along the axis
//! and `S` flips to the other side. Non-tree edges produce HNN generators of
//! the same shape, satisfying `t c_Q t^{-1} = c_P^{-1}`.

use super::fn_point::FNPoint;
use super::marking::{Letter, Marking, Slot, Word};
use crate::error::{domain, Error, Result};
use crate::matrix::{ideal_coordinate, Mat2};

pub const RELATION_TOLERANCE: f64 = 1e-9;
pub const PARABOLIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Holonomy {
    standard: Vec<[Mat2; 3]>,
    /// Per edge: `g_a⁻¹ g_b` for tree edges, the HNN generator in the frames
    /// of its ends otherwise.
    transitions: Vec<Mat2>,
    edges: Vec<(Slot, Slot, bool)>,
    /// Tree parent and `g_p⁻¹ g_parent`.
    parent: Vec<Option<(usize, Mat2)>>,
    depth: Vec<usize>,
    placement: Vec<Mat2>,
    residual: f64,
    worst_relation: String,
}

impl Holonomy {
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn worst_relation(&self) -> &str {
        &self.worst_relation
    }

    /// Cuff matrix in the global frame (pants 0 in normal form).
    pub fn cuff(&self, s: Slot) -> Mat2 {
        conj(self.placement[s.pants], self.standard[s.pants][s.cuff])
    }

    /// HNN generator of a non-tree edge in the global frame.
    pub fn hnn(&self, edge: usize) -> Option<Mat2> {
        let (a, b, tree) = *self.edges.get(edge)?;
        (!tree).then(|| self.placement[a.pants] * self.transitions[edge] * self.placement[b.pants].inv())
    }

    /// Generator table: two cuffs per pants and one matrix per non-tree edge.
    pub fn generators(&self) -> Vec<(Letter, Mat2)> {
        let mut out = Vec::new();
        for p in 0..self.standard.len() {
            out.push((Letter::cuff(p, 0), self.cuff(Slot::new(p, 0))));
            out.push((Letter::cuff(p, 1), self.cuff(Slot::new(p, 1))));
        }
        for e in 0..self.edges.len() {
            if let Some(h) = self.hnn(e) {
                out.push((Letter::hnn(e), h));
            }
        }
        out
    }

    /// `g_from⁻¹ g_to` along the spanning tree.
    fn path(&self, from: usize, to: usize) -> Mat2 {
        let (mut x, mut y) = (from, to);
        let mut up = Mat2::IDENTITY;
        let mut down = Mat2::IDENTITY;
        while x != y {
            if self.depth[x] >= self.depth[y] {
                let (p, step) = self.parent[x].expect("non-root pants has a parent");
                up = up * step;
                x = p;
            } else {
                let (p, step) = self.parent[y].expect("non-root pants has a parent");
                down = step.inv() * down;
                y = p;
            }
        }
        up * down
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        match l {
            Letter::Cuff { slot, .. } if slot.pants < self.standard.len() && slot.cuff < 3 => Ok(()),
            Letter::Cuff { slot, .. } => Err(Error::Mismatch(format!("no cuff {slot:?}"))),
            Letter::Hnn { edge, .. } => match self.edges.get(edge) {
                Some((_, _, false)) => Ok(()),
                _ => Err(Error::Mismatch(format!("edge {edge} has no HNN generator"))),
            },
        }
    }

    /// Matrix of a word, up to conjugation: the product is accumulated in
    /// local frames, moving between neighbouring pants, and returned in the
    /// frame of the pants where the word starts.
    pub fn evaluate(&self, w: &Word) -> Result<Mat2> {
        let Some(&first) = w.letters().first() else {
            return Ok(Mat2::IDENTITY);
        };
        let entry = |l: Letter| match l {
            Letter::Cuff { slot, .. } => slot.pants,
            Letter::Hnn { edge, inverse: false } => self.edges[edge].0.pants,
            Letter::Hnn { edge, inverse: true } => self.edges[edge].1.pants,
        };
        self.check_letter(first)?;
        let start = entry(first);
        let mut frame = start;
        let mut acc = Mat2::IDENTITY;
        for &l in w.letters() {
            self.check_letter(l)?;
            acc = acc * self.path(frame, entry(l));
            match l {
                Letter::Cuff { slot, inverse } => {
                    let c = self.standard[slot.pants][slot.cuff];
                    acc = acc * if inverse { c.inv() } else { c };
                    frame = slot.pants;
                }
                Letter::Hnn { edge, inverse: false } => {
                    acc = acc * self.transitions[edge];
                    frame = self.edges[edge].1.pants;
                }
                Letter::Hnn { edge, inverse: true } => {
                    acc = acc * self.transitions[edge].inv();
                    frame = self.edges[edge].0.pants;
                }
            }
        }
        Ok(acc * self.path(frame, start))
    }
}

/// Pants group in normal form for cuff lengths `(l0, l1, l2)`.
pub fn pants_group(l0: f64, l1: f64, l2: f64) -> [Mat2; 3] {
    let x = 2.0 * (l0 / 2.0).cosh();
    let y = 2.0 * (l1 / 2.0).cosh();
    let s = if l2 == 0.0 {
        -1.0
    } else {
        let z = 2.0 * (l2 / 2.0).cosh();
        // root of s² + z s + 1 = 0 with |s| > 1, computed without cancellation
        -(z + (z * z - 4.0).sqrt()) / 2.0
    };
    let a = Mat2::new(x, -1.0, 1.0, 0.0);
    let b = Mat2::new(0.0, s, -1.0 / s, y);
    let c = (a * b).inv();
    [a, b, c]
}

fn normalizer(cuff: Mat2, reference: Mat2) -> Result<Mat2> {
    let (vp, vm) = cuff.fixed_points();
    let mut v = Mat2::new(vp[0], vm[0], vp[1], vm[1]);
    let mut det = v.det();
    if det == 0.0 {
        return Err(domain("holonomy", "glued cuff is not hyperbolic"));
    }
    if det < 0.0 {
        v.b = -v.b;
        v.d = -v.d;
        det = -det;
    }
    let w = v.scale(1.0 / det.sqrt()).inv();
    let (r1, r2) = reference.fixed_points();
    let u1 = ideal_coordinate(w.apply(r1));
    let u2 = ideal_coordinate(w.apply(r2));
    let r = if u1 == u2 { u1.abs() } else { (u1 * u2).sqrt() };
    if !(r.is_finite() && r > 0.0) {
        return Err(domain("holonomy", "reference cuff does not lie on one side of the glued cuff"));
    }
    Ok(Mat2::diag(r.powf(-0.5), r.sqrt()) * w)
}

fn conj(g: Mat2, m: Mat2) -> Mat2 {
    g * m * g.inv()
}

fn gluing(np_: Mat2, twist: f64, nq: Mat2) -> Mat2 {
    np_.inv() * Mat2::axis_translation(twist) * Mat2::FLIP * nq
}

fn relative_residual(factors: &[Mat2]) -> f64 {
    let product = factors.iter().fold(Mat2::IDENTITY, |acc, m| acc * *m);
    let scale: f64 = factors.iter().map(|m| m.max_abs().max(1.0)).product();
    product.distance_to_pm_identity() / scale
}

/// Holonomy of `x` in the marking `m`.
pub fn holonomy(x: &FNPoint, m: &Marking) -> Result<Holonomy> {
    x.check_against(m)?;
    let standard: Vec<[Mat2; 3]> = m
        .pants
        .iter()
        .map(|p| {
            let l = p.cuffs.map(|c| x.curve_length(c));
            pants_group(l[0], l[1], l[2])
        })
        .collect();

    let reference = |s: Slot| Slot::new(s.pants, m.reference_cuff(s.pants, s.cuff));
    let std_normalizer = |s: Slot| normalizer(standard[s.pants][s.cuff], standard[s.pants][reference(s).cuff]);
    // Normalizers are equivariant, N(g c g⁻¹, g r g⁻¹) = ±N(c, r) g⁻¹, so every
    // gluing reduces to a transition between standard frames.
    let transitions: Vec<Mat2> = m
        .edges
        .iter()
        .zip(&x.twists)
        .map(|(e, &t)| Ok(gluing(std_normalizer(e.a)?, t, std_normalizer(e.b)?)))
        .collect::<Result<_>>()?;

    let np = m.pants.len();
    let mut placement: Vec<Option<Mat2>> = vec![None; np];
    let mut parent: Vec<Option<(usize, Mat2)>> = vec![None; np];
    let mut depth = vec![0usize; np];
    placement[0] = Some(Mat2::IDENTITY);
    let mut progress = true;
    while progress {
        progress = false;
        for (k, e) in m.edges.iter().enumerate() {
            if !e.tree {
                continue;
            }
            let t = transitions[k];
            let (from, to, down) = match (placement[e.a.pants], placement[e.b.pants]) {
                (Some(_), None) => (e.a.pants, e.b.pants, t),
                (None, Some(_)) => (e.b.pants, e.a.pants, t.inv()),
                _ => continue,
            };
            placement[to] = Some(placement[from].expect("placed") * down);
            parent[to] = Some((from, down.inv()));
            depth[to] = depth[from] + 1;
            progress = true;
        }
    }
    let placement: Vec<Mat2> = placement
        .into_iter()
        .enumerate()
        .map(|(p, g)| g.ok_or_else(|| Error::Mismatch(format!("pants {p} not reached by tree edges"))))
        .collect::<Result<_>>()?;

    let mut residual = 0.0f64;
    let mut worst = String::from("none");
    let mut record = |r: f64, name: String| {
        if r > residual || r.is_nan() {
            residual = r;
            worst = name;
        }
    };
    for (p, c) in standard.iter().enumerate() {
        record(relative_residual(c), format!("pants {p} product"));
        for (i, ci) in c.iter().enumerate() {
            record((ci.det() - 1.0).abs() / ci.max_abs().powi(2).max(1.0), format!("det of cuff {p}.{i}"));
        }
    }
    for (k, e) in m.edges.iter().enumerate() {
        let t = transitions[k];
        let ca = standard[e.a.pants][e.a.cuff];
        let cb = standard[e.b.pants][e.b.cuff];
        let kind = if e.tree { "tree" } else { "HNN" };
        record(relative_residual(&[ca, t, cb, t.inv()]), format!("{kind} edge {k}"));
        record((t.det() - 1.0).abs() / t.max_abs().powi(2).max(1.0), format!("det of edge {k}"));
    }
    if !(residual <= RELATION_TOLERANCE) {
        return Err(Error::ConstructionFailure {
            residual,
            tolerance: RELATION_TOLERANCE,
            relation: worst,
        });
    }
    Ok(Holonomy {
        standard,
        transitions,
        edges: m.edges.iter().map(|e| (e.a, e.b, e.tree)).collect(),
        parent,
        depth,
        placement,
        residual,
        worst_relation: worst,
    })
}

/// Translation length of a matrix: `2 arccosh(|tr|/2)`, 0 for parabolics.
pub fn translation_length(m: &Mat2) -> Result<f64> {
    let t = m.trace().abs();
    if t > 2.0 + PARABOLIC_TOLERANCE {
        Ok(2.0 * (t / 2.0).acosh())
    } else if t >= 2.0 - PARABOLIC_TOLERANCE {
        Ok(0.0)
    } else {
        Err(Error::NotGeodesic { trace_abs: t })
    }
}

pub fn curve_length(h: &Holonomy, w: &Word) -> Result<f64> {
    if w.is_empty() {
        return Err(domain("curve_length", "empty word"));
    }
    translation_length(&h.evaluate(w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::marking::{build_marking, CurveRef};
    use approx::assert_relative_eq;

    #[test]
    fn pants_group_traces() {
        let [a, b, c] = pants_group(1.0, 2.0, 3.0);
        assert_relative_eq!(a.trace().abs(), 2.0 * 0.5f64.cosh(), max_relative = 1e-15);
        assert_relative_eq!(b.trace().abs(), 2.0 * 1.0f64.cosh(), max_relative = 1e-15);
        assert_relative_eq!(c.trace().abs(), 2.0 * 1.5f64.cosh(), max_relative = 1e-14);
        assert!((a * b * c).distance_to_pm_identity() < 1e-14);
    }

    #[test]
    fn cusp_cuff_is_parabolic() {
        let [a, b, c] = pants_group(0.0, 1.0, 0.0);
        assert_eq!(translation_length(&a).unwrap(), 0.0);
        assert!(translation_length(&b).unwrap() > 0.0);
        assert_eq!(translation_length(&c).unwrap(), 0.0);
    }

    #[test]
    fn elliptic_rejected() {
        let r = Mat2::new(0.0, -1.0, 1.0, 0.0);
        assert!(matches!(translation_length(&r), Err(Error::NotGeodesic { .. })));
    }

    #[test]
    fn one_holed_torus_boundary_is_commutator() {
        let m = build_marking(1, 1).unwrap();
        let x = FNPoint::new(1, 1, vec![2.0], vec![0.0], vec![2.0]).unwrap();
        let h = holonomy(&x, &m).unwrap();
        let a = h.cuff(Slot::new(0, 0));
        let t = h.hnn(0).unwrap();
        let commutator = a * t * a.inv() * t.inv();
        assert_relative_eq!(commutator.trace().abs(), 2.0 * 1.0f64.cosh(), max_relative = 1e-12);
        let beta = curve_length(&h, &m.curve_word(CurveRef::Boundary(0))).unwrap();
        assert_relative_eq!(beta, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn empty_word_rejected() {
        let m = build_marking(0, 3).unwrap();
        let x = FNPoint::new(0, 3, vec![], vec![], vec![1.0, 1.0, 1.0]).unwrap();
        let h = holonomy(&x, &m).unwrap();
        assert!(curve_length(&h, &Word::default()).is_err());
    }

    #[test]
    fn mismatched_point_rejected() {
        let m = build_marking(1, 2).unwrap();
        let x = FNPoint::new(1, 1, vec![1.0], vec![0.0], vec![1.0]).unwrap();
        assert!(matches!(holonomy(&x, &m), Err(Error::Mismatch(_))));
    }
}
