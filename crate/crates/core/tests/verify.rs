use singinv::exactgeom::MonomialIdeal;
use singinv::germs::parse_polynomial;
use singinv::rational::frac;
use singinv::verify::{
    corpus_run, emit_corpus, emit_report, run_check, verify_chain, verify_lct_dominates, verify_main, Check,
    CorpusConfig, CorpusReport, Format, Report, Value, VerifyOptions,
};

fn fermat(n: usize, d: u32) -> singinv::germs::Polynomial {
    let text: Vec<String> = ["x", "y", "z"][..n].iter().map(|v| format!("{v}^{d}")).collect();
    parse_polynomial(&text.join(" + "), n).unwrap()
}

#[test]
fn fermat_golden_margins() {
    let opts = VerifyOptions::default();
    for n in 2..=3 {
        for d in 2..=6u32 {
            let main = verify_main(&fermat(n, d), &opts).unwrap();
            assert_eq!(main.lhs, Value::Exact(frac(n as i64, i64::from(d))), "n={n} d={d}");
            assert!(main.margin.is_zero() && !main.numeric, "n={n} d={d}");
            let dom = verify_lct_dominates(&fermat(n, d), &opts).unwrap();
            assert!(dom.holds);
            assert_eq!(dom.strict, Some(n as u32 > d), "n={n} d={d}: {} vs {}", dom.lhs, dom.rhs);
        }
    }
}

#[test]
fn chain_equality_for_maximal_powers() {
    for n in 2..=3 {
        for d in 1..=5 {
            let verdicts = verify_chain(&MonomialIdeal::maximal_power(n, d), &VerifyOptions::default()).unwrap();
            assert!(verdicts[0].margin.is_zero());
            assert!(verdicts.iter().all(|v| v.holds));
        }
    }
}

#[test]
fn reports_round_trip_as_a_fixpoint() {
    let opts = VerifyOptions::default();
    for (input, check) in [
        ("x^3 + y^3", Check::Main),
        ("x^2; x*y^2; y^5; z^3", Check::Chain),
        ("x^3 + x*y^3 + y^5", Check::Compute),
    ] {
        let opts = VerifyOptions { nondegenerate: true, ..opts.clone() };
        let report = run_check(input, check, &opts).unwrap();
        let json = emit_report(&report, Format::Json);
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(emit_report(&back, Format::Json), json, "{input}");
    }
    let corpus = corpus_run(&CorpusConfig::new(3, 6, 11)).unwrap();
    let json = emit_corpus(&corpus, Format::Json);
    let back: CorpusReport = serde_json::from_str(&json).unwrap();
    assert_eq!(emit_corpus(&back, Format::Json), json);
}

#[test]
fn n3_corpus_numeric_verdicts_within_tolerance() {
    let report = corpus_run(&CorpusConfig::new(3, 40, 42)).unwrap();
    let s = &report.summary;
    assert_eq!((s.exact_failures, s.numeric_failures, s.errors), (0, 0, 0), "{}", emit_corpus(&report, Format::Text));
    assert!(s.numeric_holds > 0);
    assert_eq!(report.exit_code(), 0);
}
