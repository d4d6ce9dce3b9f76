use serde::{Deserialize, Serialize};

use super::marking::{CurveRef, Marking};
use crate::error::{domain, Error, Result};

/// Fenchel–Nielsen coordinates `(L, T, Λ)`.
///
/// Twists are in units of hyperbolic length: a full Dehn twist along `γ_k`
/// changes `twists[k]` by `lengths[k]`. A boundary length of 0 is a puncture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FNPoint {
    pub g: usize,
    pub n: usize,
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
    pub boundary: Vec<f64>,
}

impl FNPoint {
    pub fn new(g: usize, n: usize, lengths: Vec<f64>, twists: Vec<f64>, boundary: Vec<f64>) -> Result<Self> {
        let p = FNPoint {
            g,
            n,
            lengths,
            twists,
            boundary,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "FNPoint";
        let expected = (3 * self.g + self.n).checked_sub(3);
        if expected != Some(self.lengths.len()) {
            return Err(domain(
                OP,
                format!("{} lengths for (g, n) = ({}, {})", self.lengths.len(), self.g, self.n),
            ));
        }
        if self.twists.len() != self.lengths.len() {
            return Err(domain(OP, "lengths and twists differ in size"));
        }
        if self.boundary.len() != self.n {
            return Err(domain(OP, format!("{} boundary entries for n = {}", self.boundary.len(), self.n)));
        }
        if let Some(l) = self.lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(domain(OP, format!("pants-curve length {l} must be finite and > 0")));
        }
        if let Some(t) = self.twists.iter().find(|t| !t.is_finite()) {
            return Err(domain(OP, format!("twist {t} must be finite")));
        }
        if let Some(b) = self.boundary.iter().find(|b| !(b.is_finite() && **b >= 0.0)) {
            return Err(domain(OP, format!("boundary length {b} must be finite and ≥ 0")));
        }
        Ok(())
    }

    pub fn check_against(&self, m: &Marking) -> Result<()> {
        if self.g != m.g || self.n != m.n || self.lengths.len() != m.edges.len() {
            return Err(Error::Mismatch(format!(
                "point of type ({}, {}) with {} curves does not fit marking ({}, {}) with {}",
                self.g,
                self.n,
                self.lengths.len(),
                m.g,
                m.n,
                m.edges.len()
            )));
        }
        Ok(())
    }

    pub fn curve_length(&self, c: CurveRef) -> f64 {
        match c {
            CurveRef::Interior(k) => self.lengths[k],
            CurveRef::Boundary(i) => self.boundary[i],
        }
    }

    pub fn with_twists(&self, twists: Vec<f64>) -> FNPoint {
        FNPoint {
            twists,
            ..self.clone()
        }
    }

    pub fn is_punctured(&self) -> bool {
        self.boundary.iter().all(|&b| b == 0.0)
    }
}

/// `(L, T, Λ) ↦ (L, T, 0)`.
pub fn phi_gamma(x: &FNPoint) -> FNPoint {
    FNPoint {
        boundary: vec![0.0; x.boundary.len()],
        ..x.clone()
    }
}
