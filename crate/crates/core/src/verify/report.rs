use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::checks::{
    chain_verdicts, generator_strings, germ_bundle, ideal_bundle, main_verdict, probe_pham, verify_lct_dominates,
    Counterexample, Verdict, VerifyOptions,
};
use super::value::Value;
use crate::error::{Error, Result};
use crate::exactgeom::MonomialIdeal;
use crate::germs::{
    lct_nondegenerate, monomialize, parse_generators, parse_polynomial_auto, IdealPresentation, MonomializeMode,
    Polynomial,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealEcho {
    pub generators: Vec<String>,
    /// `"m*J_f"` when the ideal was derived from a polynomial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub lct: Value,
    #[serde(rename = "L")]
    pub loja: Value,
    pub e: Vec<Value>,
    pub theta: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub methods: Vec<String>,
    /// `L(φ|Λ_j)` for `j = 0..n-1` (ideal inputs).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<Value>,
    /// `lct(f)` from the Newton polyhedron of `f` (polynomial inputs).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lct_f: Option<Value>,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub version: String,
    #[serde(default)]
    pub timings_ms: BTreeMap<String, u64>,
}

impl Meta {
    pub fn new(seed: u64) -> Self {
        Self { seed, version: VERSION.to_string(), timings_ms: BTreeMap::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub n: usize,
    pub ideal: IdealEcho,
    pub invariants: Invariants,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub potential_counterexamples: Vec<Counterexample>,
    pub meta: Meta,
}

/// Which verdicts a single-input run produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Compute,
    Main,
    LctDominates,
    Chain,
    Probe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Exit status: 0 all verdicts hold, 2 a theorem verdict fails exactly, 3 only numeric
/// verdicts fail (or a case errored), 4 a probe produced a potential counterexample.
pub fn exit_code<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>, counterexamples: usize, errors: usize) -> i32 {
    let mut exact_fail = false;
    let mut numeric_fail = false;
    for v in verdicts {
        if v.holds || v.probe {
            continue;
        }
        if v.numeric {
            numeric_fail = true;
        } else {
            exact_fail = true;
        }
    }
    if exact_fail {
        2
    } else if counterexamples > 0 {
        4
    } else if numeric_fail || errors > 0 {
        3
    } else {
        0
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        exit_code(&self.verdicts, self.potential_counterexamples.len(), 0)
    }
}

/// Monomial model of an ideal given as `;`-separated generators.
pub fn parse_monomial_ideal(text: &str, nondegenerate: bool) -> Result<MonomialIdeal> {
    let ideal = IdealPresentation::new(parse_generators(text, None)?)?;
    let mode = if nondegenerate { MonomializeMode::NondegenerateAssumed } else { MonomializeMode::TermExact };
    Ok(monomialize(&ideal, mode)?.ideal)
}

pub fn polynomial_report(f: &Polynomial, input: &str, check: Check, opts: &VerifyOptions) -> Result<Report> {
    let start = Instant::now();
    let mut verdicts = Vec::new();
    if check == Check::LctDominates {
        verdicts.push(verify_lct_dominates(f, opts)?);
    }
    let b = germ_bundle(f, opts)?;
    if check == Check::Main {
        verdicts.push(main_verdict(&b, opts));
    }
    let exact = b.product.exact && b.thetas.iter().all(|t| t.is_exact());
    let invariants = Invariants {
        lct: Value::Exact(b.lct.clone()),
        loja: Value::Exact(b.loja.clone()),
        e: b.lelong.e.iter().cloned().map(Value::Exact).collect(),
        theta: b
            .thetas
            .iter()
            .map(|t| match &t.theta.exact {
                Some(r) => Value::Exact(r.clone()),
                None => Value::Numeric(t.theta.value),
            })
            .collect(),
        methods: b.thetas.iter().map(|t| t.theta.method.name().to_string()).collect(),
        sections: Vec::new(),
        lct_f: lct_nondegenerate(f).ok().map(|l| Value::Exact(l.value)),
        exact,
    };
    let mut meta = Meta::new(opts.seed);
    if opts.timings {
        meta.timings_ms.insert("total".into(), start.elapsed().as_millis() as u64);
    }
    Ok(Report {
        input: input.to_string(),
        n: f.dim(),
        ideal: IdealEcho { generators: generator_strings(&b.product.ideal), derived: Some("m*J_f".into()) },
        invariants,
        verdicts,
        potential_counterexamples: Vec::new(),
        meta,
    })
}

pub fn ideal_report(a: &MonomialIdeal, input: &str, chain: bool, probe: bool, opts: &VerifyOptions) -> Result<Report> {
    let start = Instant::now();
    let b = ideal_bundle(a, opts)?;
    let mut verdicts = if chain { chain_verdicts(&b, opts) } else { Vec::new() };
    let mut potential_counterexamples = Vec::new();
    if probe {
        let outcome = probe_pham(a, opts)?;
        verdicts.push(outcome.verdict);
        potential_counterexamples.extend(outcome.counterexample);
    }
    let invariants = Invariants {
        lct: Value::Exact(b.lct.clone()),
        loja: Value::Exact(b.loja.clone()),
        e: b.lelong.e.iter().cloned().map(Value::Exact).collect(),
        theta: Vec::new(),
        methods: b.sections.iter().map(|s| s.method.name().to_string()).collect(),
        sections: b
            .sections
            .iter()
            .map(|s| match &s.exact {
                Some(r) => Value::Exact(r.clone()),
                None => Value::Numeric(s.value),
            })
            .collect(),
        lct_f: None,
        exact: b.sections.iter().all(|s| s.exact.is_some()),
    };
    let mut meta = Meta::new(opts.seed);
    if opts.timings {
        meta.timings_ms.insert("total".into(), start.elapsed().as_millis() as u64);
    }
    Ok(Report {
        input: input.to_string(),
        n: a.dim(),
        ideal: IdealEcho { generators: generator_strings(a), derived: None },
        invariants,
        verdicts,
        potential_counterexamples,
        meta,
    })
}

/// Parses `input` (an ideal when it contains `;`, a polynomial otherwise) and runs `check`.
pub fn run_check(input: &str, check: Check, opts: &VerifyOptions) -> Result<Report> {
    let as_ideal = match check {
        Check::Chain | Check::Probe => true,
        Check::Main | Check::LctDominates => false,
        Check::Compute => input.contains(';'),
    };
    if as_ideal {
        let a = parse_monomial_ideal(input, opts.nondegenerate)?;
        if check == Check::Probe && a.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: a.dim() });
        }
        ideal_report(&a, input, check == Check::Chain, check == Check::Probe, opts)
    } else {
        let f = parse_polynomial_auto(input)?;
        polynomial_report(&f, input, check, opts)
    }
}

fn text_verdict(out: &mut String, v: &Verdict) {
    let status = match (v.holds, v.probe) {
        (true, _) => "holds",
        (false, true) => "FAILS (potential counterexample)",
        (false, false) => "FAILS",
    };
    let mut tags = vec![if v.numeric { "numeric" } else { "exact" }];
    if v.assumed_nondegenerate {
        tags.push("nondegenerate-assumed");
    }
    if v.probe {
        tags.push("probe");
    }
    if v.strict == Some(true) {
        tags.push("strict");
    }
    let _ = write!(out, "  {}: {} <= {}  margin {}  {status} [{}]", v.name, v.lhs, v.rhs, v.margin, tags.join(", "));
    if let Some(t) = &v.tolerance {
        let _ = write!(out, " tolerance {t}");
    }
    out.push('\n');
    let _ = writeln!(out, "    lhs: {}", v.lhs_from);
    let _ = writeln!(out, "    rhs: {}", v.rhs_from);
}

fn join(values: &[Value]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn text_report(out: &mut String, r: &Report) {
    let _ = writeln!(out, "input: {}", r.input);
    let _ = writeln!(out, "n: {}", r.n);
    let label = r.ideal.derived.as_deref().unwrap_or("ideal");
    let _ = writeln!(out, "{label}: ({})", r.ideal.generators.join(", "));
    let inv = &r.invariants;
    let _ = writeln!(out, "lct: {}", inv.lct);
    let _ = writeln!(out, "L: {}", inv.loja);
    let _ = writeln!(out, "e: [{}]", join(&inv.e));
    if !inv.theta.is_empty() {
        let _ = writeln!(out, "theta: [{}]", join(&inv.theta));
    }
    if !inv.sections.is_empty() {
        let _ = writeln!(out, "L on sections: [{}]", join(&inv.sections));
    }
    if !inv.methods.is_empty() {
        let _ = writeln!(out, "methods: [{}]", inv.methods.join(", "));
    }
    if let Some(l) = &inv.lct_f {
        let _ = writeln!(out, "lct(f): {l}");
    }
    let _ = writeln!(out, "exact: {}", inv.exact);
    if !r.verdicts.is_empty() {
        out.push_str("verdicts:\n");
        for v in &r.verdicts {
            text_verdict(out, v);
        }
    }
    for c in &r.potential_counterexamples {
        let _ = writeln!(out, "POTENTIAL COUNTEREXAMPLE: ({}) lhs {} > rhs {}", c.generators.join(", "), c.lhs, c.rhs);
        let _ = writeln!(out, "  reproduce: {}", c.reproduce);
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Text => {
            let mut out = String::new();
            text_report(&mut out, r);
            let _ = writeln!(out, "seed: {}  version: {}", r.meta.seed, r.meta.version);
            for (k, ms) in &r.meta.timings_ms {
                let _ = writeln!(out, "time {k}: {ms} ms");
            }
            out
        }
    }
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub(crate) fn text_report_body(out: &mut String, r: &Report) {
    text_report(out, r);
}
