//! Numerical Teichmüller theory for hyperbolic surfaces with geodesic
//! boundary: Fenchel–Nielsen surfaces and their holonomy, pants
//! trigonometry, curve and arc families, lower bounds for the Thurston and
//! arc metrics, extremal-length brackets for the Teichmüller metric, and the
//! experiment harness comparing them.

pub mod asymptotics;
pub mod curves;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod metrics;
pub mod pants_trig;
pub mod surface;

pub use error::{Error, Result};
