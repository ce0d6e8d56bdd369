//! Sphere min-max estimates of Łojasiewicz exponents.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::plane::PlaneRestriction;
use crate::error::{Error, Result};
use crate::germs::IdealPresentation;
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericParams {
    pub radii: usize,
    pub first_radius: f64,
    pub radius_ratio: f64,
    pub starts: usize,
    pub seeds: usize,
    pub base_seed: u64,
    pub max_iter: usize,
}

impl Default for NumericParams {
    fn default() -> Self {
        Self {
            radii: 6,
            first_radius: 1e-4,
            radius_ratio: 10f64.powf(-0.5),
            starts: 64,
            seeds: 2,
            base_seed: 0,
            max_iter: 400,
        }
    }
}

impl NumericParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.base_seed = seed;
        self
    }

    fn radius_list(&self) -> Vec<f64> {
        (0..self.radii).map(|i| self.first_radius * self.radius_ratio.powi(i as i32)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LojaMethod {
    ExactMonomial,
    ExactLine,
    ExactHomogeneous,
    Numeric,
}

impl LojaMethod {
    pub fn name(self) -> &'static str {
        match self {
            LojaMethod::ExactMonomial => "exact-monomial",
            LojaMethod::ExactLine => "exact-line",
            LojaMethod::ExactHomogeneous => "exact-homogeneous",
            LojaMethod::Numeric => "numeric",
        }
    }

    pub fn is_exact(self) -> bool {
        self != LojaMethod::Numeric
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LojaEstimate {
    pub value: f64,
    pub exact: Option<Rational>,
    pub method: LojaMethod,
    /// Largest minus smallest slope over seeds and leave-one-out refits.
    pub spread: f64,
    pub radii: Vec<f64>,
    /// `min_u max_j |g_j(r u)|` per seed, one row per seed.
    pub samples: Vec<Vec<f64>>,
}

impl LojaEstimate {
    pub fn exact(value: Rational, method: LojaMethod) -> Self {
        Self { value: to_f64(&value), exact: Some(value), method, spread: 0.0, radii: Vec::new(), samples: Vec::new() }
    }

    pub fn relative_spread(&self) -> f64 {
        if self.value == 0.0 {
            self.spread
        } else {
            self.spread / self.value.abs()
        }
    }
}

struct Term {
    coeff: f64,
    exps: Vec<u32>,
}

/// Generators in `z`, evaluated along `z = M t` when a plane is given.
struct Evaluator {
    gens: Vec<Vec<Term>>,
    zdim: usize,
    tdim: usize,
    map: Option<Vec<Vec<f64>>>,
    max_deg: Vec<u32>,
}

impl Evaluator {
    fn new(ideal: &IdealPresentation, plane: Option<&PlaneRestriction>) -> Self {
        let zdim = ideal.dim();
        let mut max_deg = vec![0u32; zdim];
        let gens = ideal
            .generators()
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                g.terms()
                    .map(|(e, c)| {
                        for (m, &a) in max_deg.iter_mut().zip(e.coords()) {
                            *m = (*m).max(a);
                        }
                        Term { coeff: to_f64(c), exps: e.coords().to_vec() }
                    })
                    .collect()
            })
            .collect();
        let map = plane.map(PlaneRestriction::matrix_f64);
        let tdim = plane.map_or(zdim, PlaneRestriction::plane_dim);
        Self { gens, zdim, tdim, map, max_deg }
    }

    /// Values `g_j(r u)` and the derivatives `r ∂g_j/∂t_k` at `t = r u`.
    fn evaluate(&self, r: f64, u: &[Complex64]) -> (Vec<Complex64>, Vec<Vec<Complex64>>) {
        let t: Vec<Complex64> = u.iter().map(|x| x * r).collect();
        let z: Vec<Complex64> = match &self.map {
            Some(m) => m.iter().map(|row| row.iter().zip(&t).map(|(a, x)| x * a).sum()).collect(),
            None => t,
        };
        let pows: Vec<Vec<Complex64>> = z
            .iter()
            .zip(&self.max_deg)
            .map(|(x, &d)| {
                let mut p = Vec::with_capacity(d as usize + 1);
                p.push(Complex64::new(1.0, 0.0));
                for k in 0..d as usize {
                    p.push(p[k] * x);
                }
                p
            })
            .collect();
        let zero = Complex64::new(0.0, 0.0);
        let mut values = Vec::with_capacity(self.gens.len());
        let mut jac = Vec::with_capacity(self.gens.len());
        let mut dz = vec![zero; self.zdim];
        for gen in &self.gens {
            let mut value = zero;
            dz.iter_mut().for_each(|d| *d = zero);
            for term in gen {
                let mono: Complex64 = term.exps.iter().enumerate().map(|(i, &a)| pows[i][a as usize]).product();
                value += mono * term.coeff;
                for (i, &a) in term.exps.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let rest: Complex64 = term
                        .exps
                        .iter()
                        .enumerate()
                        .map(|(l, &b)| if l == i { pows[l][a as usize - 1] } else { pows[l][b as usize] })
                        .product();
                    dz[i] += rest * (term.coeff * f64::from(a));
                }
            }
            let row: Vec<Complex64> = (0..self.tdim)
                .map(|k| {
                    let dt: Complex64 = match &self.map {
                        Some(m) => (0..self.zdim).map(|i| dz[i] * m[i][k]).sum(),
                        None => dz[k],
                    };
                    dt * r
                })
                .collect();
            values.push(value);
            jac.push(row);
        }
        (values, jac)
    }

    /// Levenberg-Marquardt on `Σ_j |g_j(r u)|²` over the unit sphere; returns `max_j |g_j|` at the end point.
    fn descend(&self, r: f64, start: &[Complex64], max_iter: usize) -> f64 {
        let mut u = start.to_vec();
        let (g0, _) = self.evaluate(r, &u);
        // Residuals are rescaled so that their squares stay representable at tiny radii.
        let start_size = g0.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if start_size == 0.0 || !start_size.is_finite() {
            return start_size;
        }
        let kappa = start_size.recip();
        let scaled = |(g, a): (Vec<Complex64>, Vec<Vec<Complex64>>)| {
            let g: Vec<Complex64> = g.into_iter().map(|x| x * kappa).collect();
            let a: Vec<Vec<Complex64>> = a.into_iter().map(|row| row.into_iter().map(|x| x * kappa).collect()).collect();
            (g, a)
        };
        let (mut g, mut a) = scaled(self.evaluate(r, &u));
        let mut s = sum_sq(&g);
        let mut lambda = -1.0;
        for _ in 0..max_iter {
            if s == 0.0 || !s.is_finite() {
                break;
            }
            let basis = tangent_basis(&u);
            let b: Vec<Vec<Complex64>> = a
                .iter()
                .map(|row| basis.iter().map(|w| row.iter().zip(w).map(|(x, y)| x * y).sum()).collect())
                .collect();
            let m = basis.len();
            let mut h = vec![vec![Complex64::new(0.0, 0.0); m]; m];
            let mut rhs = vec![Complex64::new(0.0, 0.0); m];
            for (row, gj) in b.iter().zip(&g) {
                for p in 0..m {
                    rhs[p] -= row[p].conj() * gj;
                    for q in 0..m {
                        h[p][q] += row[p].conj() * row[q];
                    }
                }
            }
            let scale = (0..m).map(|p| h[p][p].re).fold(0.0, f64::max);
            if scale == 0.0 {
                break;
            }
            if lambda < 0.0 {
                lambda = 1e-3 * scale;
            }
            let mut improved = None;
            for _ in 0..40 {
                let mut damped = h.clone();
                for (p, row) in damped.iter_mut().enumerate() {
                    row[p] += lambda;
                }
                if let Some(c) = solve(damped, rhs.clone()) {
                    let mut cand: Vec<Complex64> = u.clone();
                    for (w, cp) in basis.iter().zip(&c) {
                        for (x, y) in cand.iter_mut().zip(w) {
                            *x += cp * y;
                        }
                    }
                    normalize(&mut cand);
                    let (g2, a2) = scaled(self.evaluate(r, &cand));
                    let s2 = sum_sq(&g2);
                    if s2 < s {
                        improved = Some(((s - s2) / s, cand, g2, a2, s2));
                        lambda = (lambda / 3.0).max(1e-300);
                        break;
                    }
                }
                lambda *= 4.0;
            }
            let Some((gain, cand, g2, a2, s2)) = improved else {
                break;
            };
            (u, g, a, s) = (cand, g2, a2, s2);
            if gain < 1e-12 {
                break;
            }
        }
        g.iter().map(|x| x.norm()).fold(0.0, f64::max) / kappa
    }
}

fn sum_sq(values: &[Complex64]) -> f64 {
    values.iter().map(Complex64::norm_sqr).sum()
}

/// Orthonormal basis of the Hermitian complement of the unit vector `u`.
fn tangent_basis(u: &[Complex64]) -> Vec<Vec<Complex64>> {
    let k = u.len();
    let mut basis: Vec<Vec<Complex64>> = vec![u.to_vec()];
    for e in 0..k {
        let mut v = vec![Complex64::new(0.0, 0.0); k];
        v[e] = Complex64::new(1.0, 0.0);
        for w in &basis {
            let dot: Complex64 = w.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(w) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
        if basis.len() == k {
            break;
        }
    }
    basis.remove(0);
    basis
}

/// Gaussian elimination with partial pivoting.
fn solve(mut m: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))?;
        if m[pivot][col].norm() == 0.0 {
            return None;
        }
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for c in col..n {
                let sub = f * m[col][c];
                m[row][c] -= sub;
            }
            let sub = f * b[col];
            b[row] -= sub;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let acc: Complex64 = (row + 1..n).map(|c| m[row][c] * x[c]).sum();
        x[row] = (b[row] - acc) / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn normalize(u: &mut [Complex64]) {
    let norm = u.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    u.iter_mut().for_each(|x| *x /= norm);
}

fn random_starts(dim: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let mut u: Vec<Complex64> =
                (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            if u.iter().map(Complex64::norm_sqr).sum::<f64>() > 1e-3 {
                normalize(&mut u);
                break u;
            }
        })
        .collect()
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn sample_all(eval: &Evaluator, params: &NumericParams, radii: &[f64]) -> Vec<Vec<f64>> {
    (0..params.seeds)
        .map(|s| {
            let starts = random_starts(eval.tdim, params.starts, params.base_seed.wrapping_add(s as u64));
            radii
                .iter()
                .map(|&r| {
                    let values: Vec<f64> = starts.par_iter().map(|u| eval.descend(r, u, params.max_iter)).collect();
                    values.into_iter().fold(f64::INFINITY, f64::min)
                })
                .collect()
        })
        .collect()
}

fn estimate(eval: &Evaluator, params: &NumericParams) -> Result<LojaEstimate> {
    if eval.gens.is_empty() {
        return Err(Error::DegenerateRestriction);
    }
    if params.radii < 3 || params.seeds < 1 || params.starts < 1 {
        return Err(Error::InvalidInput("numeric estimate needs at least 3 radii, 1 seed and 1 start".into()));
    }
    let healthy = |rows: &[Vec<f64>]| rows.iter().flatten().all(|v| v.is_finite() && *v > 1e-280);
    let mut radii = params.radius_list();
    let mut samples = sample_all(eval, params, &radii);
    if !healthy(&samples) {
        let mut narrow = params.clone();
        narrow.radius_ratio = params.radius_ratio.sqrt();
        radii = narrow.radius_list();
        samples = sample_all(eval, &narrow, &radii);
        if !healthy(&samples) {
            return Err(Error::NumericFailure("sphere minimum collapsed to zero".into()));
        }
    }
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let mut full = Vec::new();
    let mut all = Vec::new();
    for row in &samples {
        let ys: Vec<f64> = row.iter().map(|v| v.ln()).collect();
        let s = slope(&xs, &ys);
        full.push(s);
        all.push(s);
        for skip in 0..xs.len() {
            let keep = |v: &[f64]| v.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, x)| *x).collect::<Vec<_>>();
            all.push(slope(&keep(&xs), &keep(&ys)));
        }
    }
    let value = full.iter().sum::<f64>() / full.len() as f64;
    let lo = all.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !value.is_finite() {
        return Err(Error::NumericFailure("non-finite slope".into()));
    }
    Ok(LojaEstimate { value, exact: None, method: LojaMethod::Numeric, spread: hi - lo, radii, samples })
}

/// Slope of `ln min_{|z|=r} max_j |g_j(z)|` against `ln r` over geometric radii.
pub fn loja_numeric(ideal: &IdealPresentation, params: &NumericParams) -> Result<LojaEstimate> {
    estimate(&Evaluator::new(ideal, None), params)
}

/// Same estimate for the generators pulled back along the plane, without expanding the composition.
pub fn loja_numeric_on_plane(
    ideal: &IdealPresentation,
    plane: &PlaneRestriction,
    params: &NumericParams,
) -> Result<LojaEstimate> {
    if ideal.dim() != plane.ambient {
        return Err(Error::DimensionMismatch { expected: plane.ambient, found: ideal.dim() });
    }
    estimate(&Evaluator::new(ideal, Some(plane)), params)
}
