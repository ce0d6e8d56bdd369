//! Polynomial germs with rational coefficients and their Jacobian ideals.

mod ideal;
mod parse;
mod polynomial;

pub use ideal::{
    check_isolated, euler_subideal, jacobian_ideal, lct_nondegenerate, monomialize, product_with_maximal, require_germ,
    Flagged, IdealPresentation, Isolation, Monomialization, MonomializeMode,
};
pub use parse::{parse_generators, parse_polynomial, parse_polynomial_auto};
pub use polynomial::{variable_name, Polynomial, VARIABLE_NAMES};
