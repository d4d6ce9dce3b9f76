use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("arc of length {length} is too short for boundaries ({li}, {lj}); minimal feasible length is {minimal}")]
    ArcTooShort {
        li: f64,
        lj: f64,
        length: f64,
        minimal: f64,
    },

    #[error("x0 undefined for this boundary vector (arccosh argument {argument} < 1)")]
    X0Undefined { argument: f64 },

    #[error("no pair of distinct boundary components (n = {n})")]
    NoBoundaryPair { n: usize },

    #[error("unsupported surface (g = {g}, n = {n}): {reason}")]
    UnsupportedSurface { g: usize, n: usize, reason: &'static str },

    #[error("holonomy construction failed: relation residual {residual:e} exceeds {tolerance:e} ({relation})")]
    ConstructionFailure {
        residual: f64,
        tolerance: f64,
        relation: String,
    },

    #[error("word is not a geodesic class (|trace| = {trace_abs})")]
    NotGeodesic { trace_abs: f64 },

    #[error("double of punctured boundary undefined (boundary {index} has length 0)")]
    PuncturedDouble { index: usize },

    #[error("epsilon {eps} too large for the cusp truncation constant with n = {n} (1 - 2nπ√2 ε^(1/4) = {factor})")]
    EpsilonTooLarge { eps: f64, n: usize, factor: f64 },

    #[error("mismatched points: {0}")]
    Mismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
