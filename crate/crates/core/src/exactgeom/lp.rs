//! Dense two-phase simplex over exact rationals.
//!
//! All variables are implicitly non-negative. Pivoting follows Bland's rule
//! (lowest-index entering column, lowest-index leaving basic variable on ratio
//! ties), so the method terminates on degenerate problems and its output only
//! depends on the order of variables and constraints.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self { coeffs, relation, rhs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

/// Optimal solution with a dual certificate: `Σ rhs_i · duals_i == value`.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub value: Rational,
    pub point: Vec<Rational>,
    pub duals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(Optimum),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimum(&self) -> Option<&Optimum> {
        match self {
            LpOutcome::Optimal(o) => Some(o),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · x` over the allowed columns. Returns false if unbounded.
    fn run(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        reduced -= &cost[b] * &self.rows[i][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * self.rhs(i))
    }
}

/// Solves `lp` exactly. Errors only on malformed input.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    let nv = lp.objective.len();
    for c in &lp.constraints {
        if c.coeffs.len() != nv {
            return Err(Error::DimensionMismatch { expected: nv, found: c.coeffs.len() });
        }
    }
    let m = lp.constraints.len();

    // Normalize to rhs >= 0 and lay out auxiliary columns.
    let mut flipped = vec![false; m];
    let mut relations = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        let rel = if c.rhs.is_negative() {
            flipped[i] = true;
            match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            }
        } else {
            c.relation
        };
        relations.push(rel);
    }
    let mut ncols = nv;
    let mut slack_col = vec![None; m];
    let mut art_col = vec![None; m];
    for (i, rel) in relations.iter().enumerate() {
        match rel {
            Relation::Le => {
                slack_col[i] = Some(ncols);
                ncols += 1;
            }
            Relation::Ge => {
                slack_col[i] = Some(ncols);
                art_col[i] = Some(ncols + 1);
                ncols += 2;
            }
            Relation::Eq => {
                art_col[i] = Some(ncols);
                ncols += 1;
            }
        }
    }
    let mut is_art = vec![false; ncols];
    for c in art_col.iter().flatten() {
        is_art[*c] = true;
    }

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut identity_col = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = if flipped[i] { -a.clone() } else { a.clone() };
        }
        row[ncols] = if flipped[i] { -c.rhs.clone() } else { c.rhs.clone() };
        match relations[i] {
            Relation::Le => {
                let s = slack_col[i].unwrap();
                row[s] = Rational::from_integer(1.into());
                basis.push(s);
                identity_col.push(s);
            }
            Relation::Ge => {
                row[slack_col[i].unwrap()] = Rational::from_integer((-1).into());
                let a = art_col[i].unwrap();
                row[a] = Rational::from_integer(1.into());
                basis.push(a);
                identity_col.push(a);
            }
            Relation::Eq => {
                let a = art_col[i].unwrap();
                row[a] = Rational::from_integer(1.into());
                basis.push(a);
                identity_col.push(a);
            }
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };

    // Phase 1: maximize -(sum of artificials).
    if is_art.iter().any(|&a| a) {
        let cost: Vec<Rational> = is_art
            .iter()
            .map(|&a| if a { Rational::from_integer((-1).into()) } else { Rational::zero() })
            .collect();
        let all = vec![true; ncols];
        t.run(&cost, &all);
        if t.objective(&cost).is_negative() {
            return Ok(LpOutcome::Infeasible);
        }
        for i in 0..m {
            if is_art[t.basis[i]] {
                if let Some(j) = (0..ncols).find(|&j| !is_art[j] && !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                }
            }
        }
    }

    // Phase 2.
    let sign = match lp.sense {
        Sense::Maximize => Rational::from_integer(1.into()),
        Sense::Minimize => Rational::from_integer((-1).into()),
    };
    let mut cost = vec![Rational::zero(); ncols];
    for (j, c) in lp.objective.iter().enumerate() {
        cost[j] = c * &sign;
    }
    let allowed: Vec<bool> = is_art.iter().map(|&a| !a).collect();
    if !t.run(&cost, &allowed) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut point = vec![Rational::zero(); nv];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < nv {
            point[b] = t.rhs(i).clone();
        }
    }
    let value = lp.objective.iter().zip(&point).fold(Rational::zero(), |acc, (c, x)| acc + c * x);
    let duals = (0..m)
        .map(|i| {
            let col = identity_col[i];
            let y = t
                .basis
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (r, &b)| acc + &cost[b] * &t.rows[r][col]);
            let y = if flipped[i] { -y } else { y };
            y * &sign
        })
        .collect();
    Ok(LpOutcome::Optimal(Optimum { value, point, duals }))
}
