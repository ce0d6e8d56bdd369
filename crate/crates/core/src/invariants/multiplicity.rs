//! Samuel and mixed multiplicities via covolumes of Newton polyhedra.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactgeom::{covolume, polyhedron_of, MonomialIdeal, NewtonPolyhedron};
use crate::rational::{factorial, int, Rational};

/// `n! · covol(P(a))`.
pub fn samuel_multiplicity(a: &MonomialIdeal) -> Result<Rational> {
    a.require_zero_dimensional()?;
    Ok(factorial(a.dim()) * covolume(&polyhedron_of(a)?)?)
}

/// Mixed multiplicity of an ordered list of ideals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedMass {
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
    pub arguments: Vec<MonomialIdeal>,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Covolumes of `Σ_t c_t · P_t`, keyed by the count vector `c`.
type CovolumeCache = HashMap<Vec<usize>, Rational>;

/// Polarization grouped by distinct arguments:
/// `Σ_{∅ ≠ S} (-1)^{n-|S|} covol(Σ_{i∈S} P_i)` where `classes[t]` occurs `mult[t]` times.
fn polarize(classes: &[NewtonPolyhedron], mult: &[usize], cache: &mut CovolumeCache) -> Result<Rational> {
    let n: usize = mult.iter().sum();
    let mut total = Rational::zero();
    let mut counts = vec![0usize; classes.len()];
    loop {
        // advance the count vector (odometer), skipping the all-zero start
        let mut t = 0;
        loop {
            if t == counts.len() {
                return Ok(total);
            }
            counts[t] += 1;
            if counts[t] <= mult[t] {
                break;
            }
            counts[t] = 0;
            t += 1;
        }
        let size: usize = counts.iter().sum();
        let covol = match cache.get(&counts) {
            Some(v) => v.clone(),
            None => {
                let mut sum: Option<NewtonPolyhedron> = None;
                for (p, &c) in classes.iter().zip(&counts) {
                    if c == 0 {
                        continue;
                    }
                    let scaled = p.scale(c as u32);
                    sum = Some(match sum {
                        None => scaled,
                        Some(s) => s.minkowski_sum(&scaled)?,
                    });
                }
                let v = covolume(&sum.expect("non-empty subset"))?;
                cache.insert(counts.clone(), v.clone());
                v
            }
        };
        let weight = counts.iter().zip(mult).fold(1i64, |acc, (&c, &m)| acc * binomial(m, c));
        let term = covol * int(weight);
        if (n - size) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
}

pub fn mixed_multiplicity(ideals: &[MonomialIdeal]) -> Result<MixedMass> {
    let Some(first) = ideals.first() else {
        return Err(Error::InvalidInput("no arguments".into()));
    };
    let n = first.dim();
    if ideals.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} ideals, got {}", ideals.len())));
    }
    for a in ideals {
        if a.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.dim() });
        }
        a.require_zero_dimensional()?;
    }
    let mut distinct: Vec<&MonomialIdeal> = Vec::new();
    let mut mult: Vec<usize> = Vec::new();
    for a in ideals {
        match distinct.iter().position(|d| *d == a) {
            Some(i) => mult[i] += 1,
            None => {
                distinct.push(a);
                mult.push(1);
            }
        }
    }
    let classes = distinct.iter().map(|a| polyhedron_of(a)).collect::<Result<Vec<_>>>()?;
    let value = polarize(&classes, &mult, &mut CovolumeCache::new())?;
    Ok(MixedMass { value, arguments: ideals.to_vec() })
}

/// `(e_1, ..., e_n)` with the convention `e_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LelongVector {
    pub e: Vec<Rational>,
}

impl LelongVector {
    /// `e_k`, including `e_0 = 1`.
    pub fn get(&self, k: usize) -> Rational {
        if k == 0 {
            int(1)
        } else {
            self.e[k - 1].clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.e.len()
    }

    /// `e_{k-1} / e_k`.
    pub fn ratio(&self, k: usize) -> Rational {
        self.get(k - 1) / self.get(k)
    }
}

/// `e_k = μ(a, ..., a, m, ..., m)` with `a` repeated `k` times.
pub fn lelong_numbers(a: &MonomialIdeal) -> Result<LelongVector> {
    a.require_zero_dimensional()?;
    if a.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = a.dim();
    let classes = [polyhedron_of(a)?, polyhedron_of(&MonomialIdeal::maximal(n))?];
    let mut cache = CovolumeCache::new();
    let mut e = Vec::with_capacity(n);
    for k in 1..=n {
        let v = polarize(&classes, &[k, n - k], &mut cache)?;
        if !v.is_positive() {
            return Err(Error::Inconsistent(format!("non-positive e_{k} = {v}")));
        }
        e.push(v);
    }
    let min_degree = int(a.min_total_degree() as i64);
    if e[0] != min_degree {
        return Err(Error::Inconsistent(format!("e_1 = {} but minimal degree is {min_degree}", e[0])));
    }
    Ok(LelongVector { e })
}

/// `Σ_{k=1}^{n} e_{k-1} / e_k`.
pub fn dh_lower_bound(a: &MonomialIdeal) -> Result<Rational> {
    let e = lelong_numbers(a)?;
    Ok((1..=e.dim()).fold(Rational::zero(), |acc, k| acc + e.ratio(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn staircase() -> MonomialIdeal {
        MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 3]]).unwrap()
    }

    #[test]
    fn samuel_examples() {
        for n in 1..=3 {
            for d in 1..=3u32 {
                let expect = int(i64::from(d).pow(n as u32));
                assert_eq!(samuel_multiplicity(&MonomialIdeal::maximal_power(n, d)).unwrap(), expect);
            }
        }
        assert_eq!(samuel_multiplicity(&staircase()).unwrap(), int(5));
        let b = MonomialIdeal::from_exponents(2, &[&[3, 0], &[1, 1], &[0, 3]]).unwrap();
        assert_eq!(samuel_multiplicity(&b).unwrap(), int(super::super::multiplicity_oracle(&b).unwrap() as i64));
    }

    #[test]
    fn mixed_examples() {
        let m = MonomialIdeal::maximal(2);
        let a = staircase();
        assert_eq!(mixed_multiplicity(&[m.clone(), m.clone()]).unwrap().value, int(1));
        assert_eq!(mixed_multiplicity(&[a.clone(), m.clone()]).unwrap().value, int(2));
        assert_eq!(mixed_multiplicity(&[m, a.clone()]).unwrap().value, int(2));
        assert_eq!(mixed_multiplicity(&[a.clone(), a]).unwrap().value, int(5));
    }

    #[test]
    fn mixed_argument_checks() {
        let m = MonomialIdeal::maximal(2);
        assert!(matches!(mixed_multiplicity(&[m.clone()]), Err(Error::InvalidInput(_))));
        let bad = MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap();
        assert!(matches!(mixed_multiplicity(&[m, bad]), Err(Error::NotZeroDimensional { .. })));
    }

    #[test]
    fn lelong_examples() {
        for d in 1..=3i64 {
            let e = lelong_numbers(&MonomialIdeal::maximal_power(3, d as u32)).unwrap();
            assert_eq!(e.e, vec![int(d), int(d * d), int(d * d * d)]);
        }
        assert_eq!(lelong_numbers(&staircase()).unwrap().e, vec![int(2), int(5)]);
        assert_eq!(lelong_numbers(&MonomialIdeal::maximal(4)).unwrap().e, vec![int(1); 4]);
    }

    #[test]
    fn dh_examples() {
        for d in 1..=4 {
            assert_eq!(dh_lower_bound(&MonomialIdeal::maximal_power(2, d)).unwrap(), frac(2, i64::from(d)));
        }
        assert_eq!(dh_lower_bound(&staircase()).unwrap(), frac(9, 10));
        assert_eq!(dh_lower_bound(&MonomialIdeal::maximal(3)).unwrap(), int(3));
    }
}
