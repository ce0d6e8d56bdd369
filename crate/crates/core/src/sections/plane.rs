use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactgeom::linalg::rank;
use crate::germs::{IdealPresentation, Polynomial};
use crate::rational::{frac, Rational};

const SAMPLE_RETRIES: usize = 32;

/// Linear subspace `Λ_j` of codimension `j`, parameterized as `z = M·t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneRestriction {
    pub ambient: usize,
    pub codim: usize,
    /// `ambient` rows, `ambient - codim` columns.
    pub matrix: Vec<Vec<Rational>>,
    pub seed: u64,
}

impl PlaneRestriction {
    pub fn plane_dim(&self) -> usize {
        self.ambient - self.codim
    }

    /// The coordinate functions `z_i = Σ_k M_ik t_k` as polynomials in `t`.
    pub fn images(&self) -> Vec<Polynomial> {
        let k = self.plane_dim();
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(Polynomial::zero(k), |acc, (c, m)| &acc + &Polynomial::variable(k, c).scale(m))
            })
            .collect()
    }

    pub fn matrix_f64(&self) -> Vec<Vec<f64>> {
        self.matrix.iter().map(|row| row.iter().map(crate::rational::to_f64).collect()).collect()
    }
}

/// Seeded rational plane with entries `p/q`, `p ∈ [-9, 9]`, `q ∈ [1, 9]`, redrawn until full rank.
pub fn sample_plane(n: usize, j: usize, seed: u64) -> Result<PlaneRestriction> {
    if n < 2 || j == 0 || j >= n {
        return Err(Error::InvalidInput(format!("codimension {j} is not in 1..{n}")));
    }
    let cols = n - j;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_RETRIES {
        let matrix: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..cols).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect())
            .collect();
        let columns: Vec<Vec<Rational>> = (0..cols).map(|c| matrix.iter().map(|r| r[c].clone()).collect()).collect();
        if rank(&columns) == cols {
            return Ok(PlaneRestriction { ambient: n, codim: j, matrix, seed });
        }
    }
    Err(Error::Sampling { attempts: SAMPLE_RETRIES })
}

/// Substitutes `z = M·t` into every generator.
pub fn restrict(ideal: &IdealPresentation, plane: &PlaneRestriction) -> Result<IdealPresentation> {
    if ideal.dim() != plane.ambient {
        return Err(Error::DimensionMismatch { expected: plane.ambient, found: ideal.dim() });
    }
    let images = plane.images();
    let gens = ideal.generators().iter().map(|g| g.compose(&images)).collect::<Result<Vec<_>>>()?;
    IdealPresentation::new(gens)
}
