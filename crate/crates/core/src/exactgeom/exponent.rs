use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `z^v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// `e_i` scaled by `power`.
    pub fn axis(n: usize, axis: usize, power: u32) -> Self {
        let mut coords = vec![0; n];
        coords[axis] = power;
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`, i.e. `z^self` divides `z^other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Returns the axis if this is a pure power `z_i^k` with `k > 0`.
    pub fn pure_axis(&self) -> Option<usize> {
        let mut axis = None;
        for (i, &c) in self.0.iter().enumerate() {
            if c > 0 {
                if axis.is_some() {
                    return None;
                }
                axis = Some(i);
            }
        }
        axis
    }

    pub fn scale(&self, k: u32) -> Self {
        Self(self.0.iter().map(|&c| c * k).collect())
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&c| i64::from(c)).collect()
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: Self) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Keeps only the divisibility-minimal vectors, sorted lexicographically.
pub fn minimalize(gens: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut sorted: Vec<ExponentVector> = gens.to_vec();
    sorted.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<ExponentVector> = Vec::new();
    for v in sorted {
        if !kept.iter().any(|k| k.divides(&v)) {
            kept.push(v);
        }
    }
    kept.sort();
    kept
}

/// Monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if gens.is_empty() {
            return Err(Error::InvalidInput("empty generator set".into()));
        }
        if let Some(bad) = gens.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { dim, generators: minimalize(&gens) })
    }

    pub fn from_exponents(dim: usize, gens: &[&[u32]]) -> Result<Self> {
        Self::new(dim, gens.iter().map(|g| ExponentVector::new(g.to_vec())).collect())
    }

    /// The maximal ideal `m = (z_1, ..., z_n)`.
    pub fn maximal(dim: usize) -> Self {
        Self::maximal_power(dim, 1)
    }

    /// `m^d`, presented by all monomials of degree `d`.
    pub fn maximal_power(dim: usize, d: u32) -> Self {
        let mut gens = Vec::new();
        let mut current = vec![0u32; dim];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(ExponentVector::new(cur.clone()));
                return;
            }
            for c in 0..=left {
                cur[i] = c;
                rec(i + 1, left - c, cur, out);
            }
        }
        rec(0, d, &mut current, &mut gens);
        Self { dim, generators: minimalize(&gens) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(ExponentVector::is_zero)
    }

    /// Smallest pure power of `z_axis` in the ideal.
    pub fn axis_power(&self, axis: usize) -> Option<u32> {
        if self.is_unit() {
            return Some(0);
        }
        self.generators
            .iter()
            .filter(|g| g.pure_axis() == Some(axis))
            .map(|g| g.coords()[axis])
            .min()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        (0..self.dim).all(|i| self.axis_power(i).is_some())
    }

    pub fn require_zero_dimensional(&self) -> Result<()> {
        match (0..self.dim).find(|&i| self.axis_power(i).is_none()) {
            Some(axis) => Err(Error::NotZeroDimensional { axis }),
            None => Ok(()),
        }
    }

    pub fn min_total_degree(&self) -> u64 {
        self.generators.iter().map(ExponentVector::total_degree).min().unwrap_or(0)
    }

    /// Ideal product, minimal generators of all pairwise sums.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a + b))
            .collect::<Vec<_>>();
        Self::new(self.dim, gens)
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut acc = Self::new(self.dim, vec![ExponentVector::zero(self.dim)])?;
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Ideal generated by the `k`-th powers of the generators; same integral closure as `a^k`.
    pub fn scale(&self, k: u32) -> Self {
        Self {
            dim: self.dim,
            generators: minimalize(&self.generators.iter().map(|g| g.scale(k)).collect::<Vec<_>>()),
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_generators_drop_multiples() {
        let a = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 3], &[2, 2], &[1, 2]]).unwrap();
        assert_eq!(a.generators().len(), 3);
        assert!(a.is_zero_dimensional());
        assert_eq!(a.axis_power(1), Some(3));
    }

    #[test]
    fn maximal_power_counts() {
        assert_eq!(MonomialIdeal::maximal_power(3, 2).generators().len(), 6);
        assert_eq!(MonomialIdeal::maximal_power(2, 3).generators().len(), 4);
    }

    #[test]
    fn non_zero_dimensional_detected() {
        let a = MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap();
        assert_eq!(a.require_zero_dimensional(), Err(Error::NotZeroDimensional { axis: 0 }));
    }

    #[test]
    fn empty_rejected() {
        assert!(matches!(MonomialIdeal::new(2, vec![]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn power_of_maximal() {
        let m = MonomialIdeal::maximal(2);
        assert_eq!(m.power(3).unwrap(), MonomialIdeal::maximal_power(2, 3));
    }
}
