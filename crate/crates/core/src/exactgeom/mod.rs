//! Exact convex geometry over the non-negative orthant (dimension at most 4).

pub mod exponent;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod volume;

pub use exponent::{minimalize, ExponentVector, MonomialIdeal};
pub use lp::{solve_lp, Constraint, LinearProgram, LpOutcome, Optimum, Relation, Sense};
pub use polyhedron::{build_polyhedron, Facet, NewtonPolyhedron, MAX_DIM};
pub use volume::covolume;

/// Newton polyhedron of a monomial ideal.
pub fn polyhedron_of(ideal: &MonomialIdeal) -> crate::Result<NewtonPolyhedron> {
    build_polyhedron(ideal.generators(), ideal.dim())
}
