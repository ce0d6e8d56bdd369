//! Exact Łojasiewicz exponents in one and two variables.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::germs::IdealPresentation;
use crate::rational::{int, Rational};

/// Minimal order of vanishing of univariate generators.
pub fn loja_line(ideal: &IdealPresentation) -> Result<u64> {
    if ideal.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: ideal.dim() });
    }
    ideal.generators().iter().filter_map(|g| g.order()).min().ok_or(Error::DegenerateRestriction)
}

/// Dense univariate polynomial, coefficient of `s^i` at index `i`.
type Dense = Vec<Rational>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn remainder(mut a: Dense, b: &Dense) -> Dense {
    let lead = b.last().expect("non-zero divisor").clone();
    while a.len() >= b.len() && !a.is_empty() {
        let factor = a.last().unwrap().clone() / &lead;
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &factor * c;
        }
        trim(&mut a);
    }
    a
}

fn gcd(mut a: Dense, mut b: Dense) -> Dense {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = remainder(a, &b);
        a = b;
        b = r;
    }
    a
}

/// If every non-zero generator is a binary form of one common degree `d` and the
/// forms share no projective zero, the exponent is exactly `d`.
pub fn loja_binary_forms(ideal: &IdealPresentation) -> Option<Rational> {
    if ideal.dim() != 2 {
        return None;
    }
    let gens: Vec<_> = ideal.generators().iter().filter(|g| !g.is_zero()).collect();
    let first = gens.first()?;
    let d = first.homogeneous_degree()?;
    if d == 0 || gens.iter().any(|g| g.homogeneous_degree() != Some(d)) {
        return None;
    }
    // The point [1 : 0] is a common zero iff every x^d coefficient vanishes.
    let at_infinity = gens.iter().all(|g| g.terms().all(|(e, _)| u64::from(e.coords()[0]) != d));
    if at_infinity {
        return None;
    }
    // Finite common zeros [s : 1] are the roots of the gcd of g(s, 1).
    let mut acc: Option<Dense> = None;
    for g in &gens {
        let mut dense = vec![Rational::zero(); d as usize + 1];
        for (e, c) in g.terms() {
            dense[e.coords()[0] as usize] += c;
        }
        acc = Some(match acc {
            None => {
                trim(&mut dense);
                dense
            }
            Some(a) => gcd(a, dense),
        });
    }
    let g = acc?;
    (g.len() == 1 && !g[0].is_zero()).then(|| int(d as i64) * Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::parse_generators;

    fn ideal(s: &str, n: usize) -> IdealPresentation {
        IdealPresentation::new(parse_generators(s, Some(n)).unwrap()).unwrap()
    }

    #[test]
    fn line_orders() {
        assert_eq!(loja_line(&ideal("3x^2; 12x^2", 1)).unwrap(), 2);
        assert_eq!(loja_line(&ideal("x^3; x^5", 1)).unwrap(), 3);
        assert_eq!(loja_line(&ideal("0; 0", 1)), Err(Error::DegenerateRestriction));
    }

    #[test]
    fn binary_forms() {
        assert_eq!(loja_binary_forms(&ideal("x^2; y^2", 2)), Some(int(2)));
        assert_eq!(loja_binary_forms(&ideal("x^2 - 2xy + y^2; x^2 - y^2", 2)), None);
        assert_eq!(loja_binary_forms(&ideal("x^2 - y^2; x*y", 2)), Some(int(2)));
        assert_eq!(loja_binary_forms(&ideal("x*y; y^2", 2)), None);
        assert_eq!(loja_binary_forms(&ideal("x^2; y^3", 2)), None);
    }
}
