//! Surfaces from Fenchel–Nielsen coordinates: markings, holonomy, the map
//! `Φ_Γ` forgetting boundary lengths, and the Schottky double.

mod double;
mod fn_point;
mod holonomy;
mod marking;

pub use double::{arc_length, arc_length_with, double, DoubleData, Involution};
pub use fn_point::{phi_gamma, FNPoint};
pub use holonomy::{
    curve_length, holonomy, pants_group, translation_length, Holonomy, PARABOLIC_TOLERANCE, RELATION_TOLERANCE,
};
pub use marking::{build_marking, CurveRef, EdgeData, Letter, Marking, PantsData, Slot, Word};
