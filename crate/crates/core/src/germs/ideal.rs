//! Ideal presentations, Jacobian ideals and monomial models.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::exactgeom::{build_polyhedron, ExponentVector, MonomialIdeal};
use crate::rational::Rational;

/// A finite list of generators in a common ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    dim: usize,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(generators: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidInput("ideal needs at least one generator".into()));
        };
        let dim = first.dim();
        if let Some(bad) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { dim, generators })
    }

    pub fn from_monomial(a: &MonomialIdeal) -> Self {
        let generators = a.generators().iter().map(|g| Polynomial::monomial(g.clone(), Rational::one())).collect();
        Self { dim: a.dim(), generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(Polynomial::is_zero)
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// `(∂f/∂z_1, ..., ∂f/∂z_n)`, dropping vanishing partials.
pub fn jacobian_ideal(f: &Polynomial) -> Result<IdealPresentation> {
    if f.is_constant() {
        return Err(Error::DegenerateGerm("constant polynomial".into()));
    }
    let partials: Vec<Polynomial> = (0..f.dim()).map(|i| f.derivative(i)).filter(|p| !p.is_zero()).collect();
    if partials.is_empty() {
        return Err(Error::DegenerateGerm("all partial derivatives vanish".into()));
    }
    IdealPresentation::new(partials)
}

/// `m · I`: every product `z_i · g_j`.
pub fn product_with_maximal(ideal: &IdealPresentation) -> IdealPresentation {
    let n = ideal.dim();
    let generators = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .flat_map(|g| (0..n).map(move |i| &Polynomial::variable(n, i) * g))
        .collect();
    IdealPresentation { dim: n, generators }
}

/// `(z_1 ∂f/∂z_1, ..., z_n ∂f/∂z_n)`, a subideal of `m · J_f` whose integral closure contains `f`.
pub fn euler_subideal(f: &Polynomial) -> Result<IdealPresentation> {
    let n = f.dim();
    let generators: Vec<Polynomial> = (0..n)
        .map(|i| &Polynomial::variable(n, i) * &f.derivative(i))
        .filter(|p| !p.is_zero())
        .collect();
    if generators.is_empty() {
        return Err(Error::DegenerateGerm("all partial derivatives vanish".into()));
    }
    IdealPresentation::new(generators)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomializeMode {
    /// Every generator must be a single term.
    TermExact,
    /// All exponents of all generators, assuming Newton non-degeneracy.
    NondegenerateAssumed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomialization {
    pub ideal: MonomialIdeal,
    pub exact: bool,
    pub mode: MonomializeMode,
}

pub fn monomialize(ideal: &IdealPresentation, mode: MonomializeMode) -> Result<Monomialization> {
    let mut exps: Vec<ExponentVector> = Vec::new();
    for (index, g) in ideal.generators().iter().enumerate() {
        match mode {
            MonomializeMode::TermExact => match g.single_term() {
                Some((e, _)) => exps.push(e.clone()),
                None => return Err(Error::NotMonomializable { index, generator: g.to_string() }),
            },
            MonomializeMode::NondegenerateAssumed => exps.extend(g.support()),
        }
    }
    if exps.is_empty() {
        return Err(Error::InvalidInput("ideal has no non-zero generators".into()));
    }
    let exact = mode == MonomializeMode::TermExact;
    Ok(Monomialization { ideal: MonomialIdeal::new(ideal.dim(), exps)?, exact, mode })
}

/// Value paired with whether it is exact or rests on the non-degeneracy assumption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flagged<T> {
    pub value: T,
    pub exact: bool,
}

pub fn require_germ(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::InvalidInput("germ must vanish at the origin".into()));
    }
    Ok(())
}

/// `min(1, 1/t0)` with `t0` the diagonal intercept of the Newton polyhedron of `supp f`.
pub fn lct_nondegenerate(f: &Polynomial) -> Result<Flagged<Rational>> {
    require_germ(f)?;
    let p = build_polyhedron(&f.support(), f.dim())?;
    let t0 = p.diagonal_intercept()?;
    let value = t0.recip().min(Rational::one());
    Ok(Flagged { value, exact: f.num_terms() == 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isolation {
    Isolated,
    NotIsolated,
    Unknown,
}

pub fn check_isolated(f: &Polynomial) -> Isolation {
    if (0..f.dim()).any(|i| !f.uses_variable(i)) {
        return Isolation::NotIsolated;
    }
    let Ok(jac) = jacobian_ideal(f) else {
        return Isolation::NotIsolated;
    };
    match monomialize(&jac, MonomializeMode::NondegenerateAssumed) {
        Ok(m) if m.ideal.is_zero_dimensional() => Isolation::Isolated,
        _ => Isolation::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::parse::{parse_generators, parse_polynomial};
    use crate::rational::{frac, int};

    fn poly(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn ideal(s: &str, n: usize) -> IdealPresentation {
        IdealPresentation::new(parse_generators(s, Some(n)).unwrap()).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_ideal(&poly("x^3 + y^3", 2)).unwrap(), ideal("3x^2; 3y^2", 2));
        assert_eq!(jacobian_ideal(&poly("x^2*y", 2)).unwrap(), ideal("2xy; x^2", 2));
        assert_eq!(jacobian_ideal(&poly("x^2 + xy + y^3", 2)).unwrap(), ideal("2x + y; x + 3y^2", 2));
        assert!(matches!(jacobian_ideal(&poly("5", 2)), Err(Error::DegenerateGerm(_))));
    }

    #[test]
    fn product_examples() {
        assert_eq!(product_with_maximal(&ideal("3x^2; 3y^2", 2)), ideal("3x^3; 3x^2y; 3xy^2; 3y^3", 2));
        assert_eq!(product_with_maximal(&ideal("1", 2)), ideal("x; y", 2));
        assert_eq!(product_with_maximal(&ideal("x", 2)), ideal("x^2; xy", 2));
    }

    #[test]
    fn monomialize_examples() {
        let exact = monomialize(&ideal("3x^3; 3x^2y; 3xy^2; 3y^3", 2), MonomializeMode::TermExact).unwrap();
        assert!(exact.exact);
        assert_eq!(exact.ideal, MonomialIdeal::maximal_power(2, 3));
        let mixed = ideal("2x + y; x + 3y^2", 2);
        assert!(matches!(
            monomialize(&mixed, MonomializeMode::TermExact),
            Err(Error::NotMonomializable { index: 0, .. })
        ));
        let nd = monomialize(&mixed, MonomializeMode::NondegenerateAssumed).unwrap();
        assert!(!nd.exact);
        assert_eq!(nd.ideal, MonomialIdeal::maximal(2));
    }

    #[test]
    fn lct_nondegenerate_examples() {
        for d in 2..=6 {
            let f = poly(&format!("x^{d} + y^{d}"), 2);
            let got = lct_nondegenerate(&f).unwrap();
            assert_eq!(got.value, frac(2, d).min(int(1)));
            assert!(!got.exact);
        }
        assert_eq!(lct_nondegenerate(&poly("x^2 + y^3", 2)).unwrap().value, frac(5, 6));
        let xy = lct_nondegenerate(&poly("xy", 2)).unwrap();
        assert_eq!(xy.value, int(1));
        assert!(xy.exact);
        assert!(lct_nondegenerate(&poly("1 + x", 2)).is_err());
    }

    #[test]
    fn isolation_examples() {
        assert_eq!(check_isolated(&poly("x^3 + y^3", 2)), Isolation::Isolated);
        assert_eq!(check_isolated(&poly("x^2*y^2", 2)), Isolation::Unknown);
        assert_eq!(check_isolated(&poly("x^2", 2)), Isolation::NotIsolated);
    }

    #[test]
    fn euler_identity_for_homogeneous() {
        for (s, d) in [("x^3 + y^3", 3), ("x^2*y - 1/2*x*y^2 + 4y^3", 3), ("x^4 + y^4 + z^4 + xyz^2", 4)] {
            let f = parse_polynomial(s, if s.contains('z') { 3 } else { 2 }).unwrap();
            let n = f.dim();
            let euler = (0..n).fold(Polynomial::zero(n), |acc, i| &acc + &(&Polynomial::variable(n, i) * &f.derivative(i)));
            assert_eq!(euler, f.scale(&int(d)));
            let sub = euler_subideal(&f).unwrap();
            assert_eq!(sub.generators().len(), n);
        }
    }
}
