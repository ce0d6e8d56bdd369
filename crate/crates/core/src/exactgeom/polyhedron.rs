//! Newton polyhedra `conv(gens) + R^n_{>=0}` with exact facet descriptions.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exponent::{minimalize, ExponentVector};
use super::linalg::{cross_product, gcd_normalize, rank_i64};
use super::lp::{solve_lp, Constraint, LinearProgram, LpOutcome, Relation, Sense};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

pub const MAX_DIM: usize = 4;

/// Inequality `<normal, x> >= offset` with a primitive non-negative integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.normal.iter().zip(x).fold(Rational::zero(), |acc, (&w, xi)| acc + int(w) * xi)
    }

    pub fn eval_int(&self, x: &[i64]) -> i64 {
        self.normal.iter().zip(x).map(|(w, v)| w * v).sum()
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &w) in self.normal.iter().enumerate() {
            if w == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if w != 1 {
                write!(f, "{w}")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        write!(f, " >= {}", self.offset)
    }
}

/// `{x >= 0 : <normal, x> >= offset for every facet}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    dim: usize,
    generators: Vec<ExponentVector>,
    vertices: Vec<ExponentVector>,
    facets: Vec<Facet>,
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if k > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx)?;
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Builds the Newton polyhedron of the monomial ideal generated by `gens`.
pub fn build_polyhedron(gens: &[ExponentVector], n: usize) -> Result<NewtonPolyhedron> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    if gens.is_empty() {
        return Err(Error::InvalidInput("empty generator set".into()));
    }
    if let Some(bad) = gens.iter().find(|g| g.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
    }
    let generators = minimalize(gens);
    let pts: Vec<Vec<i64>> = generators.iter().map(ExponentVector::to_i64).collect();

    // A facet is spanned by k affinely independent points and n - k axis rays.
    let mut facets = BTreeSet::new();
    for k in 1..=n.min(pts.len()) {
        combinations(pts.len(), k, |chosen| {
            combinations(n, n - k, |axes| {
                let base = &pts[chosen[0]];
                let mut rows: Vec<Vec<i64>> = chosen[1..]
                    .iter()
                    .map(|&c| pts[c].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                for &a in axes {
                    let mut e = vec![0; n];
                    e[a] = 1;
                    rows.push(e);
                }
                let mut w = cross_product(&rows, n)?;
                if w.iter().all(|&x| x == 0) {
                    return Ok(());
                }
                if w.iter().all(|&x| x <= 0) {
                    w.iter_mut().for_each(|x| *x = -*x);
                } else if w.iter().any(|&x| x < 0) {
                    return Ok(());
                }
                gcd_normalize(&mut w);
                let offset: i64 = w.iter().zip(base).map(|(a, b)| a * b).sum();
                if offset == 0 {
                    return Ok(());
                }
                let facet = Facet { normal: w, offset };
                if pts.iter().all(|p| facet.eval_int(p) >= offset) {
                    facets.insert(facet);
                }
                Ok(())
            })
        })?;
    }
    let facets: Vec<Facet> = facets.into_iter().collect();

    let vertices = generators
        .iter()
        .filter(|g| {
            let p = g.to_i64();
            let mut tight: Vec<Vec<i64>> =
                facets.iter().filter(|f| f.eval_int(&p) == f.offset).map(|f| f.normal.clone()).collect();
            for (i, &c) in p.iter().enumerate() {
                if c == 0 {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    tight.push(e);
                }
            }
            tight.len() >= n && rank_i64(&tight) == n
        })
        .cloned()
        .collect();

    Ok(NewtonPolyhedron { dim: n, generators, vertices, facets })
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// True when the polyhedron is the whole orthant (the unit ideal).
    pub fn is_orthant(&self) -> bool {
        self.generators.iter().any(ExponentVector::is_zero)
    }

    /// Membership by facet evaluation.
    pub fn contains_by_facets(&self, q: &[Rational]) -> bool {
        q.iter().all(|x| !x.is_negative()) && self.facets.iter().all(|f| f.eval(q) >= int(f.offset))
    }

    /// Membership by LP: `q = sum lambda_j v_j + s` with `lambda` a convex combination and `s >= 0`.
    pub fn contains_by_lp(&self, q: &[Rational]) -> Result<bool> {
        let g = self.generators.len();
        let n = self.dim;
        let nv = g + n;
        let mut constraints = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut coeffs = vec![Rational::zero(); nv];
            for (j, v) in self.generators.iter().enumerate() {
                coeffs[j] = int(i64::from(v.coords()[i]));
            }
            coeffs[g + i] = int(1);
            constraints.push(Constraint::new(coeffs, Relation::Eq, q[i].clone()));
        }
        let mut coeffs = vec![Rational::zero(); nv];
        coeffs[..g].iter_mut().for_each(|c| *c = int(1));
        constraints.push(Constraint::new(coeffs, Relation::Eq, int(1)));
        let lp = LinearProgram { sense: Sense::Maximize, objective: vec![Rational::zero(); nv], constraints };
        Ok(matches!(solve_lp(&lp)?, LpOutcome::Optimal(_)))
    }

    /// Exact membership; the facet and LP answers must agree.
    pub fn contains(&self, q: &[Rational]) -> Result<bool> {
        if q.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: q.len() });
        }
        if q.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput("negative coordinate".into()));
        }
        let by_facets = self.contains_by_facets(q);
        let by_lp = self.contains_by_lp(q)?;
        if by_facets != by_lp {
            return Err(Error::Inconsistent(format!(
                "membership disagreement (facets {by_facets}, lp {by_lp})"
            )));
        }
        Ok(by_facets)
    }

    /// `self + other`; realizes the Newton polyhedron of a product ideal.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let sums: Vec<ExponentVector> = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| a + b))
            .collect();
        build_polyhedron(&sums, self.dim)
    }

    /// `k · P`.
    pub fn scale(&self, k: u32) -> Self {
        let mut out = self.clone();
        out.generators.iter_mut().for_each(|g| *g = g.scale(k));
        out.vertices.iter_mut().for_each(|g| *g = g.scale(k));
        out.facets.iter_mut().for_each(|f| f.offset *= i64::from(k));
        out
    }

    /// `min { t >= 0 : t·(1,...,1) ∈ P }`, obtained from a one-variable LP over the facets.
    pub fn diagonal_intercept(&self) -> Result<Rational> {
        if self.facets.is_empty() {
            return Ok(Rational::zero());
        }
        let constraints = self
            .facets
            .iter()
            .map(|f| Constraint::new(vec![int(f.normal.iter().sum())], Relation::Ge, int(f.offset)))
            .collect();
        let lp = LinearProgram { sense: Sense::Minimize, objective: vec![int(1)], constraints };
        match solve_lp(&lp)? {
            LpOutcome::Optimal(o) => Ok(o.value),
            other => Err(Error::Inconsistent(format!("diagonal LP returned {other:?}"))),
        }
    }

    /// `min { t : t·e_i ∈ P }` per axis; `None` when the axis never enters `P`.
    pub fn axis_intercepts(&self) -> Vec<Option<Rational>> {
        (0..self.dim)
            .map(|i| {
                let mut best = Rational::zero();
                for f in &self.facets {
                    if f.normal[i] == 0 {
                        return None;
                    }
                    let t = Rational::new(f.offset.into(), f.normal[i].into());
                    if t > best {
                        best = t;
                    }
                }
                Some(best)
            })
            .collect()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.axis_intercepts().iter().all(Option::is_some)
    }
}
