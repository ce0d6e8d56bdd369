//! Exact volumes of bounded H-polytopes and covolumes of Newton polyhedra.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{det, det_i128, rank};
use super::polyhedron::NewtonPolyhedron;
use crate::error::{Error, Result};
use crate::rational::{factorial, int, Rational};

/// `<a, x> >= b` with integer data.
#[derive(Debug, Clone)]
struct HalfSpace {
    a: Vec<i64>,
    b: i64,
}

struct Polytope {
    dim: usize,
    points: Vec<Vec<Rational>>,
    tight: Vec<Vec<usize>>,
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Vertex enumeration by solving every `n`-subset of constraints (Cramer, exact integers).
fn enumerate_vertices(halfspaces: &[HalfSpace], n: usize) -> Result<Polytope> {
    let mut found: BTreeSet<(Vec<i128>, i128)> = BTreeSet::new();
    subsets(halfspaces.len(), n, &mut |idx| {
        let a: Vec<Vec<i128>> = idx.iter().map(|&i| halfspaces[i].a.iter().map(|&v| i128::from(v)).collect()).collect();
        let d = det_i128(&a)?;
        if d == 0 {
            return Ok(());
        }
        let mut num = Vec::with_capacity(n);
        for col in 0..n {
            let mut ak = a.clone();
            for (r, &i) in idx.iter().enumerate() {
                ak[r][col] = i128::from(halfspaces[i].b);
            }
            num.push(det_i128(&ak)?);
        }
        let (mut num, mut den) = (num, d);
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num.iter().fold(den, |g, &x| num_integer::gcd(g, x));
        num.iter_mut().for_each(|x| *x /= g);
        den /= g;
        for h in halfspaces {
            let lhs = h
                .a
                .iter()
                .zip(&num)
                .try_fold(0i128, |acc, (&ai, &xi)| acc.checked_add(i128::from(ai).checked_mul(xi)?))
                .ok_or(Error::Overflow)?;
            let rhs = i128::from(h.b).checked_mul(den).ok_or(Error::Overflow)?;
            if lhs < rhs {
                return Ok(());
            }
        }
        found.insert((num, den));
        Ok(())
    })?;
    let mut points = Vec::with_capacity(found.len());
    let mut tight = Vec::with_capacity(found.len());
    for (num, den) in found {
        let p: Vec<Rational> =
            num.iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(den))).collect();
        let t = halfspaces
            .iter()
            .enumerate()
            .filter(|(_, h)| {
                let lhs: i128 = h.a.iter().zip(&num).map(|(&ai, &xi)| i128::from(ai) * xi).sum();
                lhs == i128::from(h.b) * den
            })
            .map(|(i, _)| i)
            .collect();
        points.push(p);
        tight.push(t);
    }
    Ok(Polytope { dim: n, points, tight })
}

fn affine_dim(points: &[&Vec<Rational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let rows: Vec<Vec<Rational>> =
        points[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    rank(&rows)
}

fn centroid(points: &[&Vec<Rational>]) -> Vec<Rational> {
    let n = points[0].len();
    let k = int(points.len() as i64);
    (0..n)
        .map(|i| points.iter().fold(Rational::zero(), |acc, p| acc + &p[i]) / &k)
        .collect()
}

impl Polytope {
    /// Pulling triangulation: cone from the face centroid over the triangulated subfaces.
    fn triangulate(&self, face: &[usize], d: usize, out: &mut Vec<Vec<Vec<Rational>>>) {
        if d == 0 {
            out.push(vec![self.points[face[0]].clone()]);
            return;
        }
        let pts: Vec<&Vec<Rational>> = face.iter().map(|&i| &self.points[i]).collect();
        let apex = centroid(&pts);
        let constraints: BTreeSet<usize> = face.iter().flat_map(|&v| self.tight[v].iter().copied()).collect();
        let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in constraints {
            let sub: Vec<usize> = face.iter().copied().filter(|&v| self.tight[v].binary_search(&c).is_ok()).collect();
            if sub.len() == face.len() || sub.is_empty() {
                continue;
            }
            let sub_pts: Vec<&Vec<Rational>> = sub.iter().map(|&i| &self.points[i]).collect();
            if affine_dim(&sub_pts) + 1 == d {
                subfaces.insert(sub);
            }
        }
        for sub in subfaces {
            let mut inner = Vec::new();
            self.triangulate(&sub, d - 1, &mut inner);
            for mut simplex in inner {
                simplex.push(apex.clone());
                out.push(simplex);
            }
        }
    }

    fn volume(&self) -> Result<Rational> {
        let all: Vec<usize> = (0..self.points.len()).collect();
        let refs: Vec<&Vec<Rational>> = self.points.iter().collect();
        if refs.is_empty() || affine_dim(&refs) != self.dim {
            return Err(Error::Inconsistent("polytope is not full-dimensional".into()));
        }
        let mut simplices = Vec::new();
        self.triangulate(&all, self.dim, &mut simplices);
        let mut total = Rational::zero();
        for s in &simplices {
            let base = &s[0];
            let m: Vec<Vec<Rational>> =
                s[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
            total += det(m).abs();
        }
        Ok(total / factorial(self.dim))
    }
}

/// Volume of `[0, bound]^n ∩ P`.
fn clipped_volume(p: &NewtonPolyhedron, bound: i64) -> Result<Rational> {
    let n = p.dim();
    let mut hs = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        hs.push(HalfSpace { a: e.clone(), b: 0 });
        e[i] = -1;
        hs.push(HalfSpace { a: e, b: -bound });
    }
    for f in p.facets() {
        hs.push(HalfSpace { a: f.normal.clone(), b: f.offset });
    }
    enumerate_vertices(&hs, n)?.volume()
}

fn pow(base: i64, n: usize) -> Rational {
    (0..n).fold(int(1), |acc, _| acc * int(base))
}

/// Volume of `R^n_{>=0} \ P`, computed inside two different bounding boxes that must agree.
pub fn covolume(p: &NewtonPolyhedron) -> Result<Rational> {
    let intercepts = p.axis_intercepts();
    let mut max = Rational::zero();
    for (axis, t) in intercepts.iter().enumerate() {
        match t {
            Some(t) if *t > max => max = t.clone(),
            Some(_) => {}
            None => return Err(Error::NotZeroDimensional { axis }),
        }
    }
    if p.is_orthant() {
        return Ok(Rational::zero());
    }
    let bound = i64::try_from(max.ceil().to_integer()).map_err(|_| Error::Overflow)? + 1;
    let n = p.dim();
    let first = pow(bound, n) - clipped_volume(p, bound)?;
    let second = pow(bound + 1, n) - clipped_volume(p, bound + 1)?;
    if first != second {
        return Err(Error::Inconsistent(format!("covolume depends on the bounding box: {first} vs {second}")));
    }
    if first.is_negative() {
        return Err(Error::Inconsistent("negative covolume".into()));
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::exponent::ExponentVector;
    use crate::exactgeom::polyhedron::build_polyhedron;
    use crate::rational::frac;

    fn poly(gens: &[&[u32]]) -> NewtonPolyhedron {
        let n = gens[0].len();
        build_polyhedron(&gens.iter().map(|g| ExponentVector::new(g.to_vec())).collect::<Vec<_>>(), n).unwrap()
    }

    #[test]
    fn covolume_examples() {
        assert_eq!(covolume(&poly(&[&[1, 0], &[0, 1]])).unwrap(), frac(1, 2));
        assert_eq!(covolume(&poly(&[&[2, 0], &[1, 1], &[0, 3]])).unwrap(), frac(5, 2));
        for d in 1..=4u32 {
            let p = poly(&[&[d, 0, 0], &[0, d, 0], &[0, 0, d]]);
            assert_eq!(covolume(&p).unwrap(), frac(i64::from(d.pow(3)), 6));
        }
    }

    #[test]
    fn covolume_four_dims() {
        let p = poly(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
        assert_eq!(covolume(&p).unwrap(), frac(16, 24));
    }

    #[test]
    fn covolume_one_dim() {
        assert_eq!(covolume(&poly(&[&[3]])).unwrap(), int(3));
    }

    #[test]
    fn unbounded_complement_rejected() {
        assert!(matches!(covolume(&poly(&[&[1, 1]])), Err(Error::NotZeroDimensional { .. })));
    }

    #[test]
    fn unit_ideal_has_zero_covolume() {
        assert_eq!(covolume(&poly(&[&[0, 0]])).unwrap(), int(0));
    }
}
