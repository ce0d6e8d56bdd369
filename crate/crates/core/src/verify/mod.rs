//! Inequality verdicts, seeded corpora and reports.

mod checks;
mod corpus;
mod report;
mod value;

pub use checks::{
    chain_verdicts, generator_strings, germ_bundle, ideal_bundle, main_verdict, probe_pham, verify_chain,
    verify_lct_dominates, verify_main, Counterexample, GermBundle, IdealBundle, ProbeOutcome, Verdict, VerifyOptions,
};
pub use corpus::{
    case_seed, corpus_run, emit_corpus, random_ideal, CaseResult, CorpusConfig, CorpusReport, MarginRecord, Summary,
};
pub use report::{
    emit_report, exit_code, ideal_report, parse_monomial_ideal, polynomial_report, run_check, Check, Format,
    IdealEcho, Invariants, Meta, Report, VERSION,
};
pub use value::{format_float, parse_value, Value};
