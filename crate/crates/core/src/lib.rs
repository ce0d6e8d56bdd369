//! Exact invariants of zero-dimensional monomial ideals and monomializable
//! hypersurface germs: log canonical thresholds, higher Lelong numbers as mixed
//! multiplicities, Łojasiewicz exponents and Teissier polar invariants, together
//! with checkers for the inequalities relating them.

pub mod error;
pub mod exactgeom;
pub mod germs;
pub mod invariants;
pub mod rational;
pub mod sections;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
