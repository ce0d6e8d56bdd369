//! Lattice-point counting for monomial ideals and their powers.
//!
//! A zero-dimensional ideal `a` in `n` variables is encoded by its height
//! function over the first `n - 1` exponents:
//! `H(x) = min { y_n : z^y ∈ a, y_{<n} <= x }`. The colength is `Σ_x H(x)` over
//! the box `x_i < p_i` (with `p_i` the pure power on axis `i`), and
//! `H_{k+1}(x) = min_{v ∈ gens(a), v_{<n} <= x} v_n + H_k(x - v_{<n})`.

use crate::error::{Error, Result};
use crate::exactgeom::MonomialIdeal;

/// Height function of a power `a^k` on the box `x_i < k·p_i`.
struct Heights {
    extents: Vec<usize>,
    values: Vec<u64>,
}

impl Heights {
    fn unit(n: usize) -> Self {
        Self { extents: vec![0; n - 1], values: vec![0] }
    }

    fn index(&self, x: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for (xi, &ext) in x.iter().zip(&self.extents) {
            if *xi >= ext {
                return None;
            }
            idx = idx * ext + xi;
        }
        Some(idx)
    }

    fn get(&self, x: &[usize]) -> u64 {
        self.index(x).map_or(0, |i| self.values[i])
    }

    fn total(&self) -> u64 {
        if self.extents.contains(&0) {
            return 0;
        }
        self.values.iter().sum()
    }
}

fn for_each_point(extents: &[usize], mut f: impl FnMut(&[usize])) {
    let mut x = vec![0usize; extents.len()];
    if extents.contains(&0) {
        return;
    }
    loop {
        f(&x);
        let mut i = extents.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            x[i] += 1;
            if x[i] < extents[i] {
                break;
            }
            x[i] = 0;
        }
    }
}

/// Iterates the heights of `a, a^2, a^3, ...`.
pub struct PowerWalker {
    dim: usize,
    powers: Vec<u64>,
    gens: Vec<Vec<u64>>,
    k: u64,
    current: Heights,
}

impl PowerWalker {
    pub fn new(a: &MonomialIdeal) -> Result<Self> {
        a.require_zero_dimensional()?;
        let n = a.dim();
        let powers = (0..n).map(|i| u64::from(a.axis_power(i).unwrap_or(0))).collect();
        let gens = a
            .generators()
            .iter()
            .map(|g| g.coords().iter().map(|&c| u64::from(c)).collect())
            .collect();
        Ok(Self { dim: n, powers, gens, k: 0, current: Heights::unit(n) })
    }

    /// Advances to the next power and returns its colength.
    pub fn next_colength(&mut self) -> Result<u64> {
        let n = self.dim;
        let k = self.k + 1;
        let extents: Vec<usize> = self.powers[..n - 1]
            .iter()
            .map(|&p| usize::try_from(p * k).map_err(|_| Error::Overflow))
            .collect::<Result<_>>()?;
        let size: usize = extents.iter().product::<usize>().max(1);
        if size > 50_000_000 {
            return Err(Error::InvalidInput("staircase grid too large".into()));
        }
        let mut values = vec![0u64; if extents.contains(&0) { 0 } else { size }];
        let prev = &self.current;
        let gens = &self.gens;
        let mut idx = 0;
        let mut shifted = vec![0usize; n - 1];
        for_each_point(&extents, |x| {
            let mut best = u64::MAX;
            for g in gens {
                if g[..n - 1].iter().zip(x).any(|(&gi, &xi)| gi as usize > xi) {
                    continue;
                }
                for i in 0..n - 1 {
                    shifted[i] = x[i] - g[i] as usize;
                }
                best = best.min(g[n - 1] + prev.get(&shifted));
            }
            values[idx] = best;
            idx += 1;
        });
        self.current = Heights { extents, values };
        self.k = k;
        Ok(self.current.total())
    }
}

/// Number of monomials outside `a` (the staircase complement).
pub fn colength(a: &MonomialIdeal) -> Result<u64> {
    PowerWalker::new(a)?.next_colength()
}

/// Colengths of `a^1, ..., a^kmax`.
pub fn power_colengths(a: &MonomialIdeal, kmax: usize) -> Result<Vec<u64>> {
    let mut walker = PowerWalker::new(a)?;
    (0..kmax).map(|_| walker.next_colength()).collect()
}

pub const ORACLE_BUDGET: usize = 64;

/// Samuel multiplicity from the n-th finite difference of `k ↦ colength(a^k)`.
///
/// Starts at `k0 = n + 1` and doubles `k0` until the differences at `k0` and
/// `k0 + 1` agree, confirmed once more at `2·k0`.
pub fn multiplicity_oracle(a: &MonomialIdeal) -> Result<i128> {
    a.require_zero_dimensional()?;
    let n = a.dim();
    let mut walker = PowerWalker::new(a)?;
    let mut lengths: Vec<i128> = vec![0];
    let mut length = |k: usize, lengths: &mut Vec<i128>| -> Result<i128> {
        while lengths.len() <= k {
            lengths.push(i128::from(walker.next_colength()?));
        }
        Ok(lengths[k])
    };
    let binom = |n: usize, k: usize| -> i128 { (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128) };
    let mut diff = |k0: usize, lengths: &mut Vec<i128>| -> Result<i128> {
        let mut d = 0i128;
        for i in 0..=n {
            let term = binom(n, i) * length(k0 + i, lengths)?;
            if (n - i) % 2 == 0 {
                d += term;
            } else {
                d -= term;
            }
        }
        Ok(d)
    };
    let mut k0 = n + 1;
    while k0 <= ORACLE_BUDGET {
        let here = diff(k0, &mut lengths)?;
        if here == diff(k0 + 1, &mut lengths)? && here == diff(2 * k0, &mut lengths)? {
            return Ok(here);
        }
        k0 *= 2;
    }
    Err(Error::OracleBudgetExceeded { budget: ORACLE_BUDGET })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, gens).unwrap()
    }

    /// Direct enumeration of the box, used to pin the height recursion.
    fn brute_colength(a: &MonomialIdeal) -> u64 {
        let n = a.dim();
        let p: Vec<u32> = (0..n).map(|i| a.axis_power(i).unwrap()).collect();
        let mut count = 0;
        let mut x = vec![0u32; n];
        loop {
            if !a.generators().iter().any(|g| g.coords().iter().zip(&x).all(|(gi, xi)| gi <= xi)) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                x[i] += 1;
                if x[i] < p[i] {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn colength_examples() {
        assert_eq!(colength(&MonomialIdeal::maximal(2)).unwrap(), 1);
        assert_eq!(colength(&ideal(2, &[&[2, 0], &[1, 1], &[0, 3]])).unwrap(), 4);
        for d in 1..6u64 {
            assert_eq!(colength(&MonomialIdeal::maximal_power(2, d as u32)).unwrap(), d * (d + 1) / 2);
        }
    }

    #[test]
    fn colength_matches_brute_force() {
        let a = ideal(3, &[&[3, 0, 0], &[0, 2, 0], &[0, 0, 4], &[1, 1, 1], &[2, 0, 1], &[0, 1, 2]]);
        assert_eq!(colength(&a).unwrap(), brute_colength(&a));
        for k in 1..=3 {
            let ak = a.power(k).unwrap();
            assert_eq!(power_colengths(&a, k as usize).unwrap()[k as usize - 1], brute_colength(&ak));
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(multiplicity_oracle(&MonomialIdeal::maximal(2)).unwrap(), 1);
        assert_eq!(multiplicity_oracle(&ideal(2, &[&[2, 0], &[1, 1], &[0, 3]])).unwrap(), 5);
        for d in 1..4 {
            assert_eq!(multiplicity_oracle(&MonomialIdeal::maximal_power(3, d)).unwrap(), i128::from(d.pow(3)));
        }
    }

    #[test]
    fn one_variable() {
        let a = ideal(1, &[&[4]]);
        assert_eq!(colength(&a).unwrap(), 4);
        assert_eq!(multiplicity_oracle(&a).unwrap(), 4);
    }

    #[test]
    fn rejects_non_zero_dimensional() {
        assert!(matches!(colength(&ideal(2, &[&[1, 1]])), Err(Error::NotZeroDimensional { .. })));
    }
}
