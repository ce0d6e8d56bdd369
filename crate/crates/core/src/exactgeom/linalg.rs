//! Small dense exact linear algebra (n <= 4 in practice).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Row-echelon rank over the rationals.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for k in c..cols {
                let sub = &factor * &m[r][k];
                m[i][k] -= sub;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().map(|&v| crate::rational::int(v)).collect()).collect();
    rank(&rows)
}

/// Determinant by Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut sign = Rational::from_integer(1.into());
    let mut acc = Rational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        let pivot = m[c][c].clone();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for k in c..n {
                let sub = &factor * &m[c][k];
                m[i][k] -= sub;
            }
        }
        acc *= pivot;
    }
    acc * sign
}

/// Fraction-free (Bareiss) integer determinant with overflow detection.
pub fn det_i128(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = ((k + 1)..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// Integer vector orthogonal to the `n - 1` given rows (generalized cross product).
pub fn cross_product(rows: &[Vec<i64>], n: usize) -> Result<Vec<i64>> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut out = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != skip)
                    .map(|(_, &v)| i128::from(v))
                    .collect()
            })
            .collect();
        let d = det_i128(&minor)?;
        let d = if skip % 2 == 0 { d } else { -d };
        out.push(i64::try_from(d).map_err(|_| Error::Overflow)?);
    }
    Ok(out)
}

pub fn gcd_normalize(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x.abs()));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn bareiss_matches_rational() {
        let m = vec![vec![2i128, 1, 3], vec![0, 4, 5], vec![7, 1, 1]];
        let r: Vec<Vec<Rational>> =
            m.iter().map(|row| row.iter().map(|&v| int(v as i64)).collect()).collect();
        assert_eq!(Rational::from_integer(det_i128(&m).unwrap().into()), det(r));
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let rows = vec![vec![1, -1, 0], vec![0, 0, 1]];
        let w = cross_product(&rows, 3).unwrap();
        for r in &rows {
            assert_eq!(r.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
        assert_ne!(w, vec![0, 0, 0]);
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 3]]), 2);
    }
}
