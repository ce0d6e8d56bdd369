//! Restrictions to generic planes and Łojasiewicz exponents of the restricted ideals.

mod exact;
mod numeric;
mod plane;
mod polar;

pub use exact::{loja_binary_forms, loja_line};
pub use numeric::{loja_numeric, loja_numeric_on_plane, LojaEstimate, LojaMethod, NumericParams};
pub use plane::{restrict, sample_plane, PlaneRestriction};
pub use polar::{loja_restricted, loja_section, polar_invariant, polar_sequence, PolarInvariant};
