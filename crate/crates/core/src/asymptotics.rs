//! Constants from the cusp-truncation, dilation and Nielsen-extension
//! estimates.
//!
//! The cusp truncation constant is implemented in its final stated form
//! `max{(1 − 2nπ√2 ε^{1/4})^{-2}, 1 + √(32π e^{2π}) ε^{1/4}}`; an intermediate
//! step of its derivation carries the factor `1 − n√2 ε^{1/4}` instead, which
//! gives smaller values. The stated form is undefined once
//! `2nπ√2 ε^{1/4} ≥ 1`, i.e. `ε ≥ (2nπ√2)^{-4}` (about `1.28e-4` for `n = 1`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::metrics::Interval;

/// `R(ε) = exp(−2π/ε)` for a horocycle of length `ε ∈ (0, 1]`.
pub fn cusp_radius(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(domain("cusp_radius", format!("horocycle length {eps} outside (0, 1]")));
    }
    Ok((-2.0 * PI / eps).exp())
}

pub fn cusp_truncation_constant(eps: f64, n: usize) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(domain("cusp_truncation_constant", format!("ε = {eps} must be > 0")));
    }
    if n == 0 {
        return Err(domain("cusp_truncation_constant", "n must be ≥ 1"));
    }
    let q = eps.powf(0.25);
    let factor = 1.0 - 2.0 * n as f64 * PI * 2f64.sqrt() * q;
    if factor <= 0.0 {
        return Err(Error::EpsilonTooLarge { eps, n, factor });
    }
    let other = 1.0 + (32.0 * PI * (2.0 * PI).exp()).sqrt() * q;
    Ok(factor.powi(-2).max(other))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BmmsDilation {
    pub dilation: f64,
    /// `ε* = (2/π) ε` for each entry.
    pub eps_star: Vec<f64>,
}

/// `Π (1 + 2ε_j²)` for `ε_j ∈ (0, 1/2)`.
pub fn bmms_dilation(eps: &[f64]) -> Result<BmmsDilation> {
    if let Some(e) = eps.iter().find(|e| !(**e > 0.0 && **e < 0.5)) {
        return Err(domain("bmms_dilation", format!("ε = {e} outside (0, 1/2)")));
    }
    Ok(BmmsDilation {
        dilation: eps.iter().map(|e| 1.0 + 2.0 * e * e).product(),
        eps_star: eps.iter().map(|e| 2.0 / PI * e).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonBounds {
    /// `log(n+2)`: Teichmüller distance versus its extremal-length estimate.
    pub teich_additive: f64,
    /// `log(n+3)`: forgetting boundary lengths, Teichmüller metric.
    pub phi_additive: f64,
    /// `(n+1)²`: extremal length of a multicurve versus its largest part.
    pub ext_factor: f64,
}

pub fn comparison_bounds(n: usize) -> Result<ComparisonBounds> {
    if n == 0 {
        return Err(domain("comparison_bounds", "n must be ≥ 1"));
    }
    let n = n as f64;
    Ok(ComparisonBounds {
        teich_additive: (n + 2.0).ln(),
        phi_additive: (n + 3.0).ln(),
        ext_factor: (n + 1.0) * (n + 1.0),
    })
}

/// Reading of the factor argument `2 sinh λ/2^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NielsenParsing {
    /// `2 sinh(λ / 2^i)`.
    #[default]
    HalvedArgument,
    /// `(2 sinh λ) / 2^i`.
    ScaledValue,
}

impl NielsenParsing {
    fn argument(self, lambda: f64, i: u32) -> f64 {
        let scale = 0.5f64.powi(i as i32);
        match self {
            NielsenParsing::HalvedArgument => 2.0 * (lambda * scale).sinh(),
            NielsenParsing::ScaledValue => 2.0 * lambda.sinh() * scale,
        }
    }

    /// Bound on `Σ_{i>N} x_i · 2^N`, valid for `N ≥ first_valid_index`.
    fn tail_coefficient(self, lambda: f64) -> f64 {
        match self {
            // sinh u ≤ sinh(1)·u on [0, 1]
            NielsenParsing::HalvedArgument => 2.0 * 1f64.sinh() * lambda,
            NielsenParsing::ScaledValue => 2.0 * lambda.sinh(),
        }
    }

    fn first_valid_index(self, lambda: f64) -> u32 {
        match self {
            NielsenParsing::HalvedArgument => {
                let mut n = 0;
                while lambda * 0.5f64.powi(n as i32 + 1) > 1.0 {
                    n += 1;
                }
                n
            }
            NielsenParsing::ScaledValue => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NielsenProduct {
    pub value: f64,
    pub terms: u32,
    /// Upper bound on the truncation error.
    pub tail_bound: f64,
}

/// `Π_{i=1}^{terms} [1 − (2/π) arctan(x_i)]`.
pub fn nielsen_truncated(lambda: f64, terms: u32, parsing: NielsenParsing) -> f64 {
    (1..=terms)
        .map(|i| {
            let f = 1.0 - 2.0 / PI * parsing.argument(lambda, i).atan();
            assert!(f > 0.0, "arctan stays below π/2 for finite arguments");
            f
        })
        .product()
}

/// Truncated product with error below `tol`.
///
/// With `a_i = (2/π) arctan(x_i) ≤ (2/π) x_i` and `Π(1 − a_i) ≥ 1 − Σ a_i`,
/// dropping the factors `i > N` changes the product by at most
/// `(2/π) Σ_{i>N} x_i`. For the halved argument and `λ/2^{N+1} ≤ 1`,
/// `x_i ≤ 2 sinh(1) λ 2^{-i}`, so the error is at most
/// `(4/π) sinh(1) λ 2^{-N}`; for the scaled value it is
/// `(4/π) sinh(λ) 2^{-N}`. `N` is the first index meeting `tol`.
pub fn nielsen_product(lambda: f64, tol: f64, parsing: NielsenParsing) -> Result<NielsenProduct> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(domain("nielsen_k_infinity", format!("λ = {lambda} must be finite and ≥ 0")));
    }
    if !(tol > 0.0) {
        return Err(domain("nielsen_k_infinity", format!("tolerance {tol} must be > 0")));
    }
    let coefficient = 2.0 / PI * parsing.tail_coefficient(lambda);
    let mut terms = parsing.first_valid_index(lambda).max(1);
    let bound = |n: u32| coefficient * 0.5f64.powi(n as i32);
    while bound(terms) >= tol && terms < 2000 {
        terms += 1;
    }
    Ok(NielsenProduct {
        value: nielsen_truncated(lambda, terms, parsing),
        terms,
        tail_bound: bound(terms),
    })
}

/// `k_∞(λ)` with the halved-argument reading.
pub fn nielsen_k_infinity(lambda: f64, tol: f64) -> Result<f64> {
    Ok(nielsen_product(lambda, tol, NielsenParsing::HalvedArgument)?.value)
}

/// Bracket `[k_∞ l, l]` for the length on the infinite Nielsen extension of a
/// curve of length `l`; boundary-parallel classes have length 0 there.
pub fn halpern_bracket(lx: f64, lambda: f64, peripheral: bool) -> Result<Interval> {
    if !(lx > 0.0 && lx.is_finite()) {
        return Err(domain("halpern_bracket", format!("length {lx} must be > 0")));
    }
    if peripheral {
        return Interval::new(0.0, 0.0);
    }
    let k = nielsen_k_infinity(lambda, 1e-15)?;
    Interval::new(k * lx, lx)
}
