use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::value::Value;
use crate::error::{Error, Result};
use crate::exactgeom::{build_polyhedron, MonomialIdeal};
use crate::germs::{
    check_isolated, jacobian_ideal, lct_nondegenerate, monomialize, product_with_maximal, require_germ,
    IdealPresentation, Isolation, Monomialization, MonomializeMode, Polynomial,
};
use crate::invariants::{lct_monomial, lelong_numbers, loja_monomial, multiplicity_oracle, LelongVector};
use crate::rational::{int, Rational};
use crate::sections::{
    loja_line, loja_section, polar_sequence, restrict, sample_plane, LojaEstimate, LojaMethod, NumericParams,
    PlaneRestriction, PolarInvariant,
};

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Relative tolerance for verdicts with a numeric side.
    pub tolerance: f64,
    pub numeric: NumericParams,
    /// Allow the nondegenerate-assumed monomialization when a presentation is not term-exact.
    pub nondegenerate: bool,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 1, tolerance: 0.05, numeric: NumericParams::default(), nondegenerate: false, timings: false }
    }
}

impl VerifyOptions {
    pub fn params(&self) -> NumericParams {
        self.numeric.clone().with_seed(self.seed)
    }
}

/// One inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    pub margin: Value,
    pub holds: bool,
    pub numeric: bool,
    pub tolerance: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    pub assumed_nondegenerate: bool,
    /// Evidence for an open question rather than a consequence of a theorem.
    pub probe: bool,
    pub lhs_from: String,
    pub rhs_from: String,
}

impl Verdict {
    pub fn new(name: &str, lhs: Value, rhs: Value, tolerance: f64, lhs_from: String, rhs_from: String) -> Self {
        let margin = rhs.minus(&lhs);
        let numeric = !(lhs.is_exact() && rhs.is_exact());
        let holds = if numeric {
            let scale = lhs.as_f64().abs().max(rhs.as_f64().abs());
            margin.as_f64() >= -tolerance * scale
        } else {
            !margin.is_negative()
        };
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            margin,
            holds,
            numeric,
            tolerance: numeric.then_some(Value::Numeric(tolerance)),
            strict: None,
            assumed_nondegenerate: false,
            probe: false,
            lhs_from,
            rhs_from,
        }
    }

    fn flagged(mut self, assumed: bool) -> Self {
        self.assumed_nondegenerate = assumed;
        self
    }
}

fn estimate_value(est: &LojaEstimate) -> Value {
    match &est.exact {
        Some(r) => Value::Exact(r.clone()),
        None => Value::Numeric(est.value),
    }
}

fn methods(list: &[&LojaEstimate]) -> String {
    list.iter().map(|e| e.method.name()).collect::<Vec<_>>().join(", ")
}

/// Invariants of a zero-dimensional monomial ideal `a`, with `L(φ|Λ_j)` for `j = 0..n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealBundle {
    pub ideal: MonomialIdeal,
    pub lct: Rational,
    pub loja: Rational,
    pub lelong: LelongVector,
    pub sections: Vec<LojaEstimate>,
    pub planes: Vec<Option<PlaneRestriction>>,
}

pub fn ideal_bundle(a: &MonomialIdeal, opts: &VerifyOptions) -> Result<IdealBundle> {
    a.require_zero_dimensional()?;
    let lct = lct_monomial(a)?;
    let loja = loja_monomial(a)?;
    let lelong = lelong_numbers(a)?;
    let presentation = IdealPresentation::from_monomial(a);
    let params = opts.params();
    let mut sections = vec![LojaEstimate::exact(loja.clone(), LojaMethod::ExactMonomial)];
    let mut planes = vec![None];
    for j in 1..a.dim() {
        let (est, plane) = loja_section(&presentation, j, opts.seed.wrapping_add(j as u64), &params)?;
        sections.push(est);
        planes.push(Some(plane));
    }
    Ok(IdealBundle { ideal: a.clone(), lct, loja, lelong, sections, planes })
}

/// Invariants of an isolated germ `f` and of the monomial model of `m · J_f`.
#[derive(Debug, Clone, PartialEq)]
pub struct GermBundle {
    pub f: Polynomial,
    pub thetas: Vec<PolarInvariant>,
    pub product: Monomialization,
    pub lct: Rational,
    pub loja: Rational,
    pub lelong: LelongVector,
}

fn product_model(f: &Polynomial, opts: &VerifyOptions) -> Result<Monomialization> {
    require_germ(f)?;
    if check_isolated(f) == Isolation::NotIsolated {
        return Err(Error::NotIsolated(f.to_string()));
    }
    let mj = product_with_maximal(&jacobian_ideal(f)?);
    match monomialize(&mj, MonomializeMode::TermExact) {
        Err(Error::NotMonomializable { .. }) if opts.nondegenerate => {
            monomialize(&mj, MonomializeMode::NondegenerateAssumed)
        }
        other => other,
    }
}

pub fn germ_bundle(f: &Polynomial, opts: &VerifyOptions) -> Result<GermBundle> {
    let product = product_model(f, opts)?;
    product.ideal.require_zero_dimensional().map_err(|_| Error::NotIsolated(f.to_string()))?;
    let thetas = polar_sequence(f, opts.seed, &opts.params())?;
    Ok(GermBundle {
        f: f.clone(),
        lct: lct_monomial(&product.ideal)?,
        loja: loja_monomial(&product.ideal)?,
        lelong: lelong_numbers(&product.ideal)?,
        thetas,
        product,
    })
}

/// `Σ_j 1/(1 + θ(f_j)) <= lct(m · J_f)`.
pub fn main_verdict(b: &GermBundle, opts: &VerifyOptions) -> Verdict {
    let thetas: Vec<&LojaEstimate> = b.thetas.iter().map(|p| &p.theta).collect();
    let lhs = if thetas.iter().all(|t| t.exact.is_some()) {
        Value::Exact(
            thetas.iter().fold(Rational::zero(), |acc, t| acc + (t.exact.clone().unwrap() + Rational::one()).recip()),
        )
    } else {
        Value::Numeric(thetas.iter().map(|t| 1.0 / (1.0 + t.value)).sum())
    };
    Verdict::new(
        "main-inequality",
        lhs,
        Value::Exact(b.lct.clone()),
        opts.tolerance,
        format!("sum 1/(1+theta_j), polar_invariant [{}]", methods(&thetas)),
        format!("lct_monomial(monomialize(m*J_f), {})", mode_name(&b.product)),
    )
    .flagged(!b.product.exact)
}

fn mode_name(m: &Monomialization) -> &'static str {
    match m.mode {
        MonomializeMode::TermExact => "term-exact",
        MonomializeMode::NondegenerateAssumed => "nondegenerate-assumed",
    }
}

pub fn verify_main(f: &Polynomial, opts: &VerifyOptions) -> Result<Verdict> {
    Ok(main_verdict(&germ_bundle(f, opts)?, opts))
}

/// `lct(f) <= lct(m · J_f)`, with a strictness indicator.
pub fn verify_lct_dominates(f: &Polynomial, opts: &VerifyOptions) -> Result<Verdict> {
    require_germ(f)?;
    if !build_polyhedron(&f.support(), f.dim())?.is_zero_dimensional() {
        return Err(Error::InvalidInput(format!(
            "the Newton polyhedron of {f} does not meet every axis, so its threshold formula is not available"
        )));
    }
    let product = product_model(f, opts)?;
    let lct_f = lct_nondegenerate(f)?;
    let mut v = Verdict::new(
        "lct-dominates",
        Value::Exact(lct_f.value),
        Value::Exact(lct_monomial(&product.ideal)?),
        opts.tolerance,
        format!("lct_nondegenerate(f), {}", if lct_f.exact { "exact" } else { "nondegenerate-assumed" }),
        format!("lct_monomial(monomialize(m*J_f), {})", mode_name(&product)),
    )
    .flagged(!lct_f.exact || !product.exact);
    v.strict = Some(v.margin.as_f64() > 0.0);
    Ok(v)
}

/// `Σ e_{k-1}/e_k <= lct` and, for every `j`, `1/L(φ|Λ_j) <= e_{n-j-1}/e_{n-j}`.
pub fn chain_verdicts(b: &IdealBundle, opts: &VerifyOptions) -> Vec<Verdict> {
    let n = b.ideal.dim();
    let e = &b.lelong;
    let sum = (1..=n).fold(Rational::zero(), |acc, k| acc + e.ratio(k));
    let mut out = vec![Verdict::new(
        "lct-lelong-chain",
        Value::Exact(sum),
        Value::Exact(b.lct.clone()),
        opts.tolerance,
        "sum e_{k-1}/e_k, lelong_numbers".into(),
        "lct_monomial".into(),
    )];
    for (j, est) in b.sections.iter().enumerate() {
        let lhs = match estimate_value(est) {
            Value::Exact(r) => Value::Exact(r.recip()),
            Value::Numeric(x) => Value::Numeric(1.0 / x),
        };
        out.push(Verdict::new(
            &format!("lelong-section-{j}"),
            lhs,
            Value::Exact(e.ratio(n - j)),
            opts.tolerance,
            format!("1/L(phi|plane codim {j}), {}", est.method.name()),
            format!("e_{}/e_{}, lelong_numbers", n - j - 1, n - j),
        ));
    }
    out
}

pub fn verify_chain(a: &MonomialIdeal, opts: &VerifyOptions) -> Result<Vec<Verdict>> {
    Ok(chain_verdicts(&ideal_bundle(a, opts)?, opts))
}

/// Reproduction data for a failed probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub generators: Vec<String>,
    pub seed: u64,
    pub lhs: Value,
    pub rhs: Value,
    pub reproduce: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeOutcome {
    pub verdict: Verdict,
    pub reverified: bool,
    pub counterexample: Option<Counterexample>,
}

fn coordinate_line(axis: usize) -> PlaneRestriction {
    let matrix = (0..2).map(|i| vec![if i == axis { int(1) } else { int(0) }]).collect();
    PlaneRestriction { ambient: 2, codim: 1, matrix, seed: 0 }
}

/// `max 1/ord` over the given lines.
fn lct_on_lines(a: &MonomialIdeal, lines: &[PlaneRestriction]) -> Result<Rational> {
    let presentation = IdealPresentation::from_monomial(a);
    let mut best = Rational::zero();
    for line in lines {
        let order = loja_line(&restrict(&presentation, line)?)?;
        best = best.max(int(order as i64).recip());
    }
    Ok(best)
}

pub fn generator_strings(a: &MonomialIdeal) -> Vec<String> {
    IdealPresentation::from_monomial(a).generators().iter().rev().map(ToString::to_string).collect()
}

/// `lct_1(φ) + e_1/e_2 <= lct(φ)` in two variables.
pub fn probe_pham(a: &MonomialIdeal, opts: &VerifyOptions) -> Result<ProbeOutcome> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: a.dim() });
    }
    a.require_zero_dimensional()?;
    let lines = [sample_plane(2, 1, opts.seed)?, coordinate_line(0), coordinate_line(1)];
    let lct1 = lct_on_lines(a, &lines)?;
    let e = lelong_numbers(a)?;
    let lct = lct_monomial(a)?;
    let mut verdict = Verdict::new(
        "pham-probe",
        Value::Exact(&lct1 + e.ratio(2)),
        Value::Exact(lct.clone()),
        opts.tolerance,
        "max 1/ord over generic and coordinate lines + e_1/e_2".into(),
        "lct_monomial".into(),
    );
    verdict.probe = true;
    if verdict.holds {
        return Ok(ProbeOutcome { verdict, reverified: false, counterexample: None });
    }
    // Recheck along independent exact routes before reporting anything.
    let mut more_lines = vec![coordinate_line(0), coordinate_line(1)];
    for k in 1..=3u64 {
        more_lines.push(sample_plane(2, 1, opts.seed.wrapping_add(k.wrapping_mul(0x5851_f42d_4c95_7f2d)))?);
    }
    let lct1b = lct_on_lines(a, &more_lines)?;
    let e1 = int(a.min_total_degree() as i64);
    let e2 = Rational::from_integer(multiplicity_oracle(a)?.into());
    let lhs_b = &lct1b + &e1 / &e2;
    if lhs_b != *verdict.lhs.as_exact().expect("exact probe") || lhs_b <= lct {
        return Err(Error::Inconsistent(format!("probe recheck disagrees for {a}")));
    }
    let generators = generator_strings(a);
    let counterexample = Counterexample {
        reproduce: format!("singinv probe-pham '{}' --seed {}", generators.join("; "), opts.seed),
        generators,
        seed: opts.seed,
        lhs: verdict.lhs.clone(),
        rhs: verdict.rhs.clone(),
    };
    Ok(ProbeOutcome { verdict, reverified: true, counterexample: Some(counterexample) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::parse_polynomial;
    use crate::rational::frac;

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    fn staircase() -> MonomialIdeal {
        MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 3]]).unwrap()
    }

    #[test]
    fn main_examples() {
        let v = verify_main(&parse_polynomial("x^3 + y^3", 2).unwrap(), &opts()).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (Value::Exact(frac(2, 3)), Value::Exact(frac(2, 3))));
        assert!(v.holds && v.margin.is_zero() && !v.numeric);
        let v = verify_main(&parse_polynomial("x^2 + y^3", 2).unwrap(), &opts()).unwrap();
        assert_eq!(v.lhs, Value::Exact(frac(5, 6)));
        assert_eq!(v.rhs, Value::Exact(int(1)));
        assert!(v.holds);
        for d in 2..=4 {
            let f = parse_polynomial(&format!("x^{d} + y^{d} + z^{d}"), 3).unwrap();
            let v = verify_main(&f, &opts()).unwrap();
            assert_eq!(v.lhs, Value::Exact(frac(3, d)));
            assert!(v.margin.is_zero());
        }
    }

    #[test]
    fn lct_dominates_examples() {
        let v = verify_lct_dominates(&parse_polynomial("y^2 + x^3", 2).unwrap(), &opts()).unwrap();
        assert_eq!(v.lhs, Value::Exact(frac(5, 6)));
        assert!(v.holds && v.strict == Some(true) && v.assumed_nondegenerate);
        for d in 2..=6 {
            let v = verify_lct_dominates(&parse_polynomial(&format!("x^{d} + y^{d}"), 2).unwrap(), &opts()).unwrap();
            assert!(v.margin.is_zero(), "d={d}");
        }
        assert!(verify_lct_dominates(&parse_polynomial("x*y", 2).unwrap(), &opts()).is_err());
    }

    #[test]
    fn chain_examples() {
        let vs = verify_chain(&staircase(), &opts()).unwrap();
        assert_eq!(vs[0].lhs, Value::Exact(frac(9, 10)));
        assert_eq!(vs[0].rhs, Value::Exact(int(1)));
        assert_eq!(vs[1].lhs, Value::Exact(frac(1, 3)));
        assert_eq!(vs[1].rhs, Value::Exact(frac(2, 5)));
        assert!(vs.iter().all(|v| v.holds));
        for d in 1..=4 {
            for n in 2..=3 {
                let vs = verify_chain(&MonomialIdeal::maximal_power(n, d), &opts()).unwrap();
                assert!(vs[0].margin.is_zero());
                assert!(vs.iter().all(|v| v.holds), "{vs:?}");
            }
        }
    }

    #[test]
    fn probe_examples() {
        let p = probe_pham(&staircase(), &opts()).unwrap();
        assert_eq!(p.verdict.lhs, Value::Exact(frac(9, 10)));
        assert!(p.verdict.holds && p.counterexample.is_none());
        let p = probe_pham(&MonomialIdeal::maximal_power(2, 4), &opts()).unwrap();
        assert!(p.verdict.margin.is_zero());
    }

    #[test]
    fn numeric_verdict_tolerance() {
        let v = Verdict::new("t", Value::Numeric(1.02), Value::Exact(int(1)), 0.05, String::new(), String::new());
        assert!(v.holds && v.numeric && v.tolerance.is_some());
        let v = Verdict::new("t", Value::Numeric(1.2), Value::Exact(int(1)), 0.05, String::new(), String::new());
        assert!(!v.holds);
        let v = Verdict::new("t", Value::Exact(frac(1, 3)), Value::Exact(frac(1, 3)), 0.05, String::new(), String::new());
        assert!(v.holds && !v.numeric && v.tolerance.is_none());
    }
}
