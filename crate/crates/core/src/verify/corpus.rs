use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{generator_strings, Counterexample, Verdict, VerifyOptions};
use super::report::{exit_code, ideal_report, text_report_body, to_json, Format, Meta, Report};
use super::value::Value;
use crate::error::{Error, Result};
use crate::exactgeom::{ExponentVector, MonomialIdeal};
use crate::sections::NumericParams;

/// Seeded zero-dimensional monomial ideal: pure powers `x_i^{a_i}` with `a_i ∈ [2, budget]`
/// plus up to `budget` mixed monomials below those powers, minimalized.
pub fn random_ideal(n: usize, seed: u64, budget: u32) -> Result<MonomialIdeal> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    if budget < 2 {
        return Err(Error::InvalidInput(format!("degree budget {budget} is below 2")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let powers: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=budget)).collect();
    let mut gens: Vec<ExponentVector> =
        powers.iter().enumerate().map(|(i, &a)| ExponentVector::axis(n, i, a)).collect();
    for _ in 0..rng.gen_range(0..=budget) {
        let v: Vec<u32> = powers.iter().map(|&a| rng.gen_range(0..a)).collect();
        if v.iter().filter(|&&c| c > 0).count() >= 2 {
            gens.push(ExponentVector::new(v));
        }
    }
    MonomialIdeal::new(n, gens)
}

/// Seed of case `index` in a corpus seeded with `seed`.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    pub budget: u32,
    pub probe: bool,
    pub tolerance: f64,
    pub numeric: NumericParams,
    /// Worker threads; `0` uses the global pool. Not part of the report.
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip)]
    pub timings: bool,
}

impl CorpusConfig {
    pub fn new(dim: usize, count: usize, seed: u64) -> Self {
        Self {
            dim,
            count,
            seed,
            budget: 4,
            probe: dim == 2,
            tolerance: 0.05,
            numeric: NumericParams::default(),
            workers: 0,
            timings: false,
        }
    }

    fn options(&self, seed: u64) -> VerifyOptions {
        VerifyOptions {
            seed,
            tolerance: self.tolerance,
            numeric: self.numeric.clone(),
            nondegenerate: false,
            timings: self.timings,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub index: usize,
    pub seed: u64,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginRecord {
    pub name: String,
    pub margin: Value,
    pub case: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub exact_holds: usize,
    pub exact_failures: usize,
    pub numeric_holds: usize,
    pub numeric_failures: usize,
    pub probe_holds: usize,
    pub probe_failures: usize,
    pub errors: usize,
    pub min_margins: Vec<MarginRecord>,
    pub potential_counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub config: CorpusConfig,
    pub cases: usize,
    pub summary: Summary,
    pub results: Vec<CaseResult>,
    pub meta: Meta,
}

impl CorpusReport {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.results.iter().filter_map(|c| c.report.as_ref()).flat_map(|r| r.verdicts.iter())
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.verdicts(), self.summary.potential_counterexamples.len(), self.summary.errors)
    }
}

fn run_case(config: &CorpusConfig, index: usize) -> CaseResult {
    let seed = case_seed(config.seed, index);
    let ideal = match random_ideal(config.dim, seed, config.budget) {
        Ok(a) => a,
        Err(e) => return CaseResult { index, seed, generators: Vec::new(), report: None, error: Some(e.to_string()) },
    };
    let generators = generator_strings(&ideal);
    let input = generators.join("; ");
    match ideal_report(&ideal, &input, true, config.probe, &config.options(seed)) {
        Ok(report) => CaseResult { index, seed, generators, report: Some(report), error: None },
        Err(e) => CaseResult { index, seed, generators, report: None, error: Some(e.to_string()) },
    }
}

fn summarize(results: &[CaseResult]) -> Summary {
    let mut s = Summary::default();
    let mut minima: BTreeMap<String, MarginRecord> = BTreeMap::new();
    for case in results {
        let Some(report) = &case.report else {
            s.errors += 1;
            continue;
        };
        for v in &report.verdicts {
            let slot = match (v.probe, v.numeric, v.holds) {
                (true, _, true) => &mut s.probe_holds,
                (true, _, false) => &mut s.probe_failures,
                (false, false, true) => &mut s.exact_holds,
                (false, false, false) => &mut s.exact_failures,
                (false, true, true) => &mut s.numeric_holds,
                (false, true, false) => &mut s.numeric_failures,
            };
            *slot += 1;
            let better = minima.get(&v.name).is_none_or(|m| v.margin.compare(&m.margin).is_lt());
            if better {
                minima.insert(v.name.clone(), MarginRecord { name: v.name.clone(), margin: v.margin.clone(), case: case.index });
            }
        }
        s.potential_counterexamples.extend(report.potential_counterexamples.iter().cloned());
    }
    s.min_margins = minima.into_values().collect();
    s
}

/// Runs the chain verdicts (and the probe when enabled) on `count` seeded ideals.
pub fn corpus_run(config: &CorpusConfig) -> Result<CorpusReport> {
    let start = Instant::now();
    let work = || (0..config.count).into_par_iter().map(|i| run_case(config, i)).collect::<Vec<_>>();
    let results = if config.workers == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?
            .install(work)
    };
    let summary = summarize(&results);
    let mut meta = Meta::new(config.seed);
    if config.timings {
        meta.timings_ms.insert("total".into(), start.elapsed().as_millis() as u64);
    }
    Ok(CorpusReport { config: config.clone(), cases: results.len(), summary, results, meta })
}

pub fn emit_corpus(r: &CorpusReport, format: Format) -> String {
    if format == Format::Json {
        return to_json(r);
    }
    let c = &r.config;
    let s = &r.summary;
    let mut out = String::new();
    let _ = writeln!(out, "corpus: n={} count={} seed={} budget={} probe={}", c.dim, c.count, c.seed, c.budget, c.probe);
    let _ = writeln!(out, "cases: {}  errors: {}", r.cases, s.errors);
    let _ = writeln!(out, "exact verdicts: {} hold, {} fail", s.exact_holds, s.exact_failures);
    let _ = writeln!(out, "numeric verdicts: {} hold, {} fail (tolerance {})", s.numeric_holds, s.numeric_failures, c.tolerance);
    if c.probe {
        let _ = writeln!(out, "probe verdicts: {} hold, {} fail", s.probe_holds, s.probe_failures);
    }
    if !s.min_margins.is_empty() {
        out.push_str("smallest margins:\n");
        for m in &s.min_margins {
            let _ = writeln!(out, "  {}: {} (case {})", m.name, m.margin, m.case);
        }
    }
    for case in &r.results {
        match (&case.report, &case.error) {
            (_, Some(e)) => {
                let _ = writeln!(out, "case {} ({}) error: {e}", case.index, case.generators.join(", "));
            }
            (Some(report), None) if report.verdicts.iter().any(|v| !v.holds) => {
                let _ = writeln!(out, "case {} seed {}:", case.index, case.seed);
                text_report_body(&mut out, report);
            }
            _ => {}
        }
    }
    for x in &s.potential_counterexamples {
        let _ = writeln!(out, "POTENTIAL COUNTEREXAMPLE: ({})  reproduce: {}", x.generators.join(", "), x.reproduce);
    }
    let _ = writeln!(out, "seed: {}  version: {}", r.meta.seed, r.meta.version);
    for (k, ms) in &r.meta.timings_ms {
        let _ = writeln!(out, "time {k}: {ms} ms");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_ideal_contract() {
        let a = random_ideal(2, 5, 4).unwrap();
        assert!(a.is_zero_dimensional());
        assert_eq!(a, random_ideal(2, 5, 4).unwrap());
        let b = random_ideal(3, 9, 3).unwrap();
        assert!((0..3).all(|i| b.axis_power(i).is_some_and(|p| (2..=3).contains(&p))));
        let distinct: std::collections::BTreeSet<String> =
            (0..20).map(|s| random_ideal(2, s, 5).unwrap().to_string()).collect();
        assert!(distinct.len() > 5);
        assert!(random_ideal(5, 1, 3).is_err());
        assert!(random_ideal(2, 1, 1).is_err());
    }

    #[test]
    fn empty_corpus() {
        let r = corpus_run(&CorpusConfig::new(2, 0, 42)).unwrap();
        assert!(emit_corpus(&r, Format::Json).contains(r#""cases": 0"#));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn small_corpus_holds() {
        let r = corpus_run(&CorpusConfig::new(2, 12, 42)).unwrap();
        assert_eq!(r.summary.errors, 0);
        assert_eq!(r.summary.exact_failures, 0);
        assert_eq!(r.exit_code(), 0, "{}", emit_corpus(&r, Format::Text));
        let json = emit_corpus(&r, Format::Json);
        let back: CorpusReport = serde_json::from_str(&json).unwrap();
        assert_eq!(emit_corpus(&back, Format::Json), json);
    }
}
