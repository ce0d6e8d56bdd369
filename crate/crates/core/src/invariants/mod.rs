//! Exact invariants of zero-dimensional monomial ideals.

mod multiplicity;
mod staircase;

pub use multiplicity::{
    dh_lower_bound, lelong_numbers, mixed_multiplicity, samuel_multiplicity, LelongVector, MixedMass,
};
pub use staircase::{colength, multiplicity_oracle, power_colengths, ORACLE_BUDGET};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::{polyhedron_of, solve_lp, Constraint, LinearProgram, LpOutcome, MonomialIdeal, Relation, Sense};
use crate::rational::{int, Rational};

/// Log canonical threshold `1 / t0`, with `t0` the diagonal intercept of the Newton polyhedron.
pub fn lct_monomial(a: &MonomialIdeal) -> Result<Rational> {
    if a.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let t0 = polyhedron_of(a)?.diagonal_intercept()?;
    if t0.is_zero() {
        return Err(Error::UnitIdeal);
    }
    Ok(t0.recip())
}

/// Łojasiewicz exponent: the largest axis intercept of the Newton polyhedron.
///
/// The value is also recomputed by [`loja_dual`] and the two must agree.
pub fn loja_monomial(a: &MonomialIdeal) -> Result<Rational> {
    a.require_zero_dimensional()?;
    let p = polyhedron_of(a)?;
    let mut best = Rational::zero();
    for (axis, t) in p.axis_intercepts().into_iter().enumerate() {
        let t = t.ok_or(Error::NotZeroDimensional { axis })?;
        if t > best {
            best = t;
        }
    }
    let dual = loja_dual(a)?;
    if dual != best {
        return Err(Error::Inconsistent(format!("Lojasiewicz exponent: intercepts {best}, dual {dual}")));
    }
    Ok(best)
}

/// `sup { min_v <v, w> : w >= 0, min_i w_i = 1 }`, one LP per choice of the axis with `w_i = 1`.
pub fn loja_dual(a: &MonomialIdeal) -> Result<Rational> {
    let n = a.dim();
    // variables: w_1..w_n, s
    let mut best = Rational::zero();
    for axis in 0..n {
        let mut constraints = Vec::new();
        for g in a.generators() {
            let mut coeffs: Vec<Rational> = g.coords().iter().map(|&c| -int(i64::from(c))).collect();
            coeffs.push(Rational::one());
            constraints.push(Constraint::new(coeffs, Relation::Le, Rational::zero()));
        }
        for j in 0..n {
            let mut coeffs = vec![Rational::zero(); n + 1];
            coeffs[j] = Rational::one();
            let rel = if j == axis { Relation::Eq } else { Relation::Ge };
            constraints.push(Constraint::new(coeffs, rel, Rational::one()));
        }
        let mut objective = vec![Rational::zero(); n + 1];
        objective[n] = Rational::one();
        let lp = LinearProgram { sense: Sense::Maximize, objective, constraints };
        match solve_lp(&lp)? {
            LpOutcome::Optimal(o) => {
                if o.value > best {
                    best = o.value;
                }
            }
            LpOutcome::Unbounded => return Err(Error::NotZeroDimensional { axis }),
            LpOutcome::Infeasible => return Err(Error::Inconsistent("dual Lojasiewicz LP infeasible".into())),
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn staircase() -> MonomialIdeal {
        MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 3]]).unwrap()
    }

    #[test]
    fn lct_examples() {
        for n in 1..=4 {
            assert_eq!(lct_monomial(&MonomialIdeal::maximal(n)).unwrap(), int(n as i64));
            for d in 1..=4 {
                assert_eq!(lct_monomial(&MonomialIdeal::maximal_power(n, d)).unwrap(), frac(n as i64, i64::from(d)));
            }
        }
        assert_eq!(lct_monomial(&staircase()).unwrap(), int(1));
    }

    #[test]
    fn lct_of_unit_ideal_is_a_status() {
        let unit = MonomialIdeal::from_exponents(2, &[&[0, 0]]).unwrap();
        assert_eq!(lct_monomial(&unit), Err(Error::UnitIdeal));
    }

    #[test]
    fn lct_of_non_zero_dimensional_is_finite() {
        let a = MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap();
        assert_eq!(lct_monomial(&a).unwrap(), int(1));
    }

    #[test]
    fn loja_examples() {
        assert_eq!(loja_monomial(&MonomialIdeal::maximal_power(3, 4)).unwrap(), int(4));
        assert_eq!(loja_monomial(&staircase()).unwrap(), int(3));
        assert_eq!(loja_monomial(&MonomialIdeal::maximal(2)).unwrap(), int(1));
        assert_eq!(loja_dual(&staircase()).unwrap(), int(3));
    }

    #[test]
    fn loja_requires_zero_dimensional() {
        let a = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(loja_monomial(&a), Err(Error::NotZeroDimensional { axis: 1 }));
    }
}
