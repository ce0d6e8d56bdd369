use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::ExponentVector;
use crate::rational::{int, Rational};

/// Polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

pub const VARIABLE_NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(ExponentVector::zero(dim), c)
    }

    pub fn monomial(exp: ExponentVector, coeff: Rational) -> Self {
        let dim = exp.dim();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { dim, terms }
    }

    pub fn variable(dim: usize, i: usize) -> Self {
        Self::monomial(ExponentVector::axis(dim, i, 1), Rational::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (ExponentVector, Rational)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.dim() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::zero(self.dim))
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn single_term(&self) -> Option<(&ExponentVector, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Common total degree of all terms, if any.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degrees = self.terms.keys().map(ExponentVector::total_degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    /// Lowest total degree among the terms.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::total_degree).min()
    }

    pub fn uses_variable(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.coords()[i] > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e.coords()[i];
            if k == 0 {
                continue;
            }
            let mut coords = e.coords().to_vec();
            coords[i] -= 1;
            out.add_term(ExponentVector::new(coords), c * int(i64::from(k)));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.dim, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `z_i = images[i]`; the result lives in the images' ring.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: images.len() });
        }
        let target = images.first().map_or(0, Polynomial::dim);
        if let Some(bad) = images.iter().find(|p| p.dim != target) {
            return Err(Error::DimensionMismatch { expected: target, found: bad.dim });
        }
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Self::constant(target, Rational::one()), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.coords().iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates with exact rationals.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e.coords()) {
                for _ in 0..k {
                    v *= x;
                }
            }
            acc + v
        })
    }

    /// Terms in canonical order: descending total degree, then descending lexicographic.
    pub fn graded_terms(&self) -> Vec<(&ExponentVector, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grlex(b, a));
        terms
    }
}

fn grlex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b))
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

pub fn variable_name(dim: usize, i: usize) -> String {
    if dim <= VARIABLE_NAMES.len() {
        VARIABLE_NAMES[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if e.is_zero() || !mag.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &k) in e.coords().iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(variable_name(self.dim, i)),
                    _ => factors.push(format!("{}^{k}", variable_name(self.dim, i))),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn display_is_graded() {
        let p = Polynomial::from_terms(2, [(ev(&[2, 1]), int(1)), (ev(&[0, 4]), frac(-1, 2))]).unwrap();
        assert_eq!(p.to_string(), "-1/2*y^4 + x^2*y");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        assert_eq!(Polynomial::constant(2, int(-3)).to_string(), "-3");
    }

    #[test]
    fn arithmetic() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let s = &x + &y;
        let sq = s.pow(2);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coefficient(&ev(&[1, 1])), int(2));
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.derivative(0), &(&x + &y).scale(&int(2)) + &Polynomial::zero(2));
    }

    #[test]
    fn compose_to_a_line() {
        // (x^2, xy, y^3) on (t, t)
        let t = Polynomial::variable(1, 0);
        let images = vec![t.clone(), t.clone()];
        let xy = Polynomial::monomial(ev(&[1, 1]), int(1));
        assert_eq!(xy.compose(&images).unwrap(), Polynomial::monomial(ev(&[2]), int(1)));
    }
}
