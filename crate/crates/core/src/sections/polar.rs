use num_traits::One;

use super::exact::{loja_binary_forms, loja_line};
use super::numeric::{loja_numeric, loja_numeric_on_plane, LojaEstimate, LojaMethod, NumericParams};
use super::plane::{restrict, sample_plane, PlaneRestriction};
use crate::error::{Error, Result};
use crate::germs::{
    check_isolated, jacobian_ideal, monomialize, require_germ, IdealPresentation, Isolation, MonomializeMode,
    Polynomial,
};
use crate::invariants::loja_monomial;
use crate::rational::{int, Rational};

const PLANE_ATTEMPTS: u64 = 5;

/// `θ^{(j)}`: the Łojasiewicz exponent of the Jacobian ideal restricted to a generic
/// codimension-`j` plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarInvariant {
    pub j: usize,
    pub theta: LojaEstimate,
    pub plane: Option<PlaneRestriction>,
}

impl PolarInvariant {
    /// Łojasiewicz exponent of `f` itself on the plane, `θ + 1`.
    pub fn phi(&self) -> f64 {
        self.theta.value + 1.0
    }

    pub fn phi_exact(&self) -> Option<Rational> {
        self.theta.exact.as_ref().map(|t| t + Rational::one())
    }

    pub fn is_exact(&self) -> bool {
        self.theta.exact.is_some()
    }
}

fn unrestricted(jac: &IdealPresentation, params: &NumericParams) -> Result<LojaEstimate> {
    if let Ok(m) = monomialize(jac, MonomializeMode::TermExact) {
        if !m.ideal.is_zero_dimensional() {
            return Err(Error::NotIsolated("Jacobian ideal is not zero-dimensional".into()));
        }
        return Ok(LojaEstimate::exact(loja_monomial(&m.ideal)?, LojaMethod::ExactMonomial));
    }
    if jac.dim() == 1 {
        return Ok(LojaEstimate::exact(int(loja_line(jac)? as i64), LojaMethod::ExactLine));
    }
    if let Some(d) = loja_binary_forms(jac) {
        return Ok(LojaEstimate::exact(d, LojaMethod::ExactHomogeneous));
    }
    loja_numeric(jac, params)
}

/// Exact when the restriction lives on a line or consists of coprime binary forms of one degree, numeric otherwise.
pub fn loja_restricted(
    ideal: &IdealPresentation,
    plane: &PlaneRestriction,
    params: &NumericParams,
) -> Result<LojaEstimate> {
    let restricted = restrict(ideal, plane)?;
    if restricted.is_zero() {
        return Err(Error::DegenerateRestriction);
    }
    if restricted.dim() == 1 {
        return Ok(LojaEstimate::exact(int(loja_line(&restricted)? as i64), LojaMethod::ExactLine));
    }
    if let Some(d) = loja_binary_forms(&restricted) {
        return Ok(LojaEstimate::exact(d, LojaMethod::ExactHomogeneous));
    }
    loja_numeric_on_plane(ideal, plane, params)
}

/// `L(I|_{Λ_j})` on a plane seeded from `seed`, redrawn when the restriction degenerates.
pub fn loja_section(
    ideal: &IdealPresentation,
    j: usize,
    seed: u64,
    params: &NumericParams,
) -> Result<(LojaEstimate, PlaneRestriction)> {
    for attempt in 0..PLANE_ATTEMPTS {
        let plane = sample_plane(ideal.dim(), j, seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)))?;
        match loja_restricted(ideal, &plane, params) {
            Ok(theta) => return Ok((theta, plane)),
            Err(Error::DegenerateRestriction) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateRestriction)
}

pub fn polar_invariant(f: &Polynomial, j: usize, seed: u64, params: &NumericParams) -> Result<PolarInvariant> {
    require_germ(f)?;
    let n = f.dim();
    if j >= n {
        return Err(Error::InvalidInput(format!("polar index {j} must be below the dimension {n}")));
    }
    if check_isolated(f) == Isolation::NotIsolated {
        return Err(Error::NotIsolated(f.to_string()));
    }
    let jac = jacobian_ideal(f)?;
    if j == 0 {
        let theta = unrestricted(&jac, params)?;
        return Ok(PolarInvariant { j, theta, plane: None });
    }
    let (theta, plane) = loja_section(&jac, j, seed, params)?;
    Ok(PolarInvariant { j, theta, plane: Some(plane) })
}

/// `θ^{(0)}, ..., θ^{(n-1)}` with planes seeded from `seed`.
pub fn polar_sequence(f: &Polynomial, seed: u64, params: &NumericParams) -> Result<Vec<PolarInvariant>> {
    (0..f.dim()).map(|j| polar_invariant(f, j, seed.wrapping_add(j as u64), params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::parse_polynomial;

    #[test]
    fn fermat_thetas_are_exact() {
        let p = NumericParams::default();
        for n in 1..=3 {
            for d in 2..=5 {
                let vars = ["x", "y", "z"];
                let text: Vec<String> = vars[..n].iter().map(|v| format!("{v}^{d}")).collect();
                let f = parse_polynomial(&text.join(" + "), n).unwrap();
                for inv in polar_sequence(&f, 1, &p).unwrap() {
                    assert_eq!(inv.theta.exact, Some(int(d - 1)), "n={n} d={d} j={}", inv.j);
                    assert_eq!(inv.phi_exact(), Some(int(d)));
                }
            }
        }
    }

    #[test]
    fn cusp_line_and_full() {
        let f = parse_polynomial("x^2 + y^3", 2).unwrap();
        let p = NumericParams::default();
        let full = polar_invariant(&f, 0, 1, &p).unwrap();
        assert_eq!(full.theta.exact, Some(int(2)));
        let line = polar_invariant(&f, 1, 1, &p).unwrap();
        assert_eq!(line.theta.exact, Some(int(1)));
    }

    #[test]
    fn rejections() {
        let p = NumericParams::default();
        let f = parse_polynomial("x^2", 2).unwrap();
        assert!(matches!(polar_invariant(&f, 0, 1, &p), Err(Error::NotIsolated(_))));
        let g = parse_polynomial("x^2 + y^2", 2).unwrap();
        assert!(polar_invariant(&g, 2, 1, &p).is_err());
    }
}
