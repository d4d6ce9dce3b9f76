use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{build_marking, FNPoint, Marking};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RayKind {
    #[default]
    Twist,
    Length,
}

/// Deformation ray `X_s`, `s = 0..count`: twist `curve` moves by `s·step`,
/// or its length is multiplied by `e^{s·step}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaySpec {
    pub curve: usize,
    pub step: f64,
    pub count: usize,
    #[serde(default)]
    pub kind: RayKind,
}

/// Source metric of the almost-isometry report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceMetric {
    #[default]
    Arc,
    Thurston,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub g: usize,
    pub n: usize,
    pub boundary: Vec<f64>,
    pub length_range: [f64; 2],
    pub twist_range: [f64; 2],
    pub seed: u64,
    pub depth: u32,
    pub samples: usize,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub format: ReportFormat,
    #[serde(default)]
    pub ray: Option<RaySpec>,
    /// Largest admissible `|d_Th(X, X_s) − d_Th(ΦX, ΦX_s)|` on the ray.
    #[serde(default)]
    pub ceiling: Option<f64>,
    #[serde(default)]
    pub source_metric: SourceMetric,
}

impl ExperimentConfig {
    pub fn new(g: usize, n: usize, boundary: Vec<f64>) -> Self {
        ExperimentConfig {
            g,
            n,
            boundary,
            length_range: [0.2, 4.0],
            twist_range: [-2.0, 2.0],
            seed: 0,
            depth: 3,
            samples: 100,
            out: None,
            format: ReportFormat::Csv,
            ray: None,
            ceiling: None,
            source_metric: SourceMetric::Arc,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundary.len() != self.n {
            return Err(Error::Config(format!(
                "{} boundary lengths for n = {}",
                self.boundary.len(),
                self.n
            )));
        }
        if self.boundary.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
            return Err(Error::Config("boundary lengths must be finite and ≥ 0".into()));
        }
        let [lo, hi] = self.length_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::Config(format!("length range [{lo}, {hi}] must satisfy 0 < lo ≤ hi")));
        }
        let [tlo, thi] = self.twist_range;
        if !(tlo.is_finite() && thi.is_finite() && tlo <= thi) {
            return Err(Error::Config(format!("twist range [{tlo}, {thi}] must be ordered")));
        }
        if self.samples == 0 {
            return Err(Error::Config("sample count must be ≥ 1".into()));
        }
        if let Some(r) = &self.ray {
            if r.curve >= (3 * self.g + self.n).saturating_sub(3) || !r.step.is_finite() || r.count == 0 {
                return Err(Error::Config("ray needs an existing curve, finite step and count ≥ 1".into()));
            }
        }
        build_marking(self.g, self.n).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    pub fn marking(&self) -> Result<Marking> {
        build_marking(self.g, self.n)
    }

    /// Default Φ ceiling: `2 log(n+3) + max Λ`.
    pub fn phi_ceiling(&self) -> f64 {
        self.ceiling.unwrap_or_else(|| {
            2.0 * ((self.n + 3) as f64).ln() + self.boundary.iter().copied().fold(0.0, f64::max)
        })
    }
}

/// Deterministic point for `(cfg.seed, index)`: lengths log-uniform in
/// `length_range`, twists uniform in `twist_range`, boundary `cfg.boundary`.
pub fn sample_point(cfg: &ExperimentConfig, index: u64) -> Result<FNPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let k = (3 * cfg.g + cfg.n).saturating_sub(3);
    let [lo, hi] = cfg.length_range;
    let (llo, lhi) = (lo.ln(), hi.ln());
    let lengths = (0..k)
        .map(|_| if llo < lhi { rng.gen_range(llo..lhi).exp() } else { lo })
        .collect();
    let [tlo, thi] = cfg.twist_range;
    let twists = (0..k)
        .map(|_| if tlo < thi { rng.gen_range(tlo..thi) } else { tlo })
        .collect();
    FNPoint::new(cfg.g, cfg.n, lengths, twists, cfg.boundary.clone())
}
