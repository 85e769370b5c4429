use angle_rank::report::{
    analyze, applicability, import_text, run_corpus_text, ConjectureReport, Record, ReportOptions, STARTER_CORPUS,
};
use angle_rank::weil::{parse_weil, AbsoluteSimplicity, NewtonClass};
use angle_rank::Config;
use proptest::prelude::*;
use rug::Integer;

fn newton() -> impl Strategy<Value = NewtonClass> {
    prop_oneof![
        Just(NewtonClass::Ordinary),
        Just(NewtonClass::AlmostOrdinary),
        Just(NewtonClass::Supersingular),
        Just(NewtonClass::Other),
    ]
}

fn simple() -> impl Strategy<Value = Option<AbsoluteSimplicity>> {
    prop_oneof![
        Just(None),
        (1u32..20).prop_map(|m| Some(AbsoluteSimplicity::Yes(m))),
        (1u32..20).prop_map(|m| Some(AbsoluteSimplicity::HeuristicYes(m))),
        (1u32..20).prop_map(|m| Some(AbsoluteSimplicity::No(m))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_after_serialize_is_identity(idx in 0usize..255) {
        let corpus: Vec<_> = (1..=3).flat_map(|g| angle_rank::weil::enumerate_weil_polynomials(g, 2)).collect();
        let f = &corpus[idx];
        let (c, q) = f.serialize();
        prop_assert_eq!(&parse_weil(&c, &q).unwrap(), f);
    }

    #[test]
    fn applicability_is_pure(s in simple(), g in 1usize..9, r in proptest::option::of(0usize..9), c: bool, n in newton()) {
        let a = applicability(s, g, r, c, n);
        prop_assert_eq!(&a, &applicability(s, g, r, c, n));
        prop_assert_eq!(a.len(), 5);
        let general = a.iter().find(|x| x.theorem == "main:general").unwrap();
        if general.applies {
            prop_assert!(g % 2 == 1 && g > 1);
            prop_assert!(s.is_some_and(|s| s.is_simple()));
        }
        let prime = a.iter().find(|x| x.theorem == "main:prime-dim").unwrap();
        if prime.applies && g % 2 == 1 && r.is_some_and(|r| r + 1 < g) {
            prop_assert!(prime.reason.contains("inconsistent"));
        }
    }

    #[test]
    fn record_json_roundtrip(label in "[a-z0-9.]{1,12}", q in 2u64..50, coeffs in proptest::collection::vec(-100i64..100, 1..8), e in proptest::option::of(-10i64..10)) {
        let r = Record { label, q, coeffs, e_trace: e };
        let back: Record = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);
    }
}

#[test]
fn report_json_roundtrip_on_generated_corpus() {
    let config = Config::default();
    for f in angle_rank::weil::enumerate_weil_polynomials(2, 3) {
        let rec = Record::new("x", 3, &f.coeffs_i64().unwrap());
        let rep = analyze(&rec, &config);
        let back: ConjectureReport = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        assert!(rep.errors.is_empty(), "{:?}", rep.errors);
    }
}

#[test]
fn non_weil_input_is_rejected_with_partial_report() {
    let config = Config::default();
    let r = analyze(&Record::new("big", 2, &[2, 3, 1]), &config);
    assert_eq!(r.errors[0].stage, "spectrum");
    assert!(r.angle_rank.is_none());
    let r = analyze(&Record::new("odd", 2, &[1, 1]), &config);
    assert_eq!(r.errors[0].stage, "parse");
    assert!(parse_weil(&[Integer::from(3), Integer::from(0), Integer::from(1)], &Integer::from(2)).is_err());
}

#[test]
fn corpus_output_is_deterministic() {
    let a = serde_json::to_string(&run_corpus_text(STARTER_CORPUS, &Config::default(), ReportOptions::default())).unwrap();
    let b = serde_json::to_string(&run_corpus_text(STARTER_CORPUS, &Config::default(), ReportOptions::default())).unwrap();
    assert_eq!(a, b);
}

#[test]
fn degree_filter_keeps_one_row() {
    let rec = Record::new("ao", 2, &[8, 8, 2, 0, 1, 2, 1]);
    let rep = angle_rank::report::analyze_with(&rec, &Config::default(), ReportOptions { degree: Some(6) });
    assert_eq!(rep.tables.axa.as_ref().unwrap().len(), 1);
    assert_eq!(rep.tables.axa.as_ref().unwrap()[0].exotic, 2);
}

#[test]
fn import_keeps_duplicates_and_reverses_l_polynomials() {
    let out = import_text("{\"label\":\"a\",\"q\":3,\"poly\":[1,-1,3]}\n{\"label\":\"a\",\"q\":3,\"coeffs\":[3,-1,1]}\n");
    assert_eq!(out.records.len(), 2);
    assert_eq!(out.records[0], out.records[1]);
    assert_eq!(out.warnings.len(), 1);
}

#[test]
fn even_dimension_remark_applies_to_simple_fourfold_of_rank_three() {
    let rep = analyze(&Record::new("4.2", 2, &[16, 24, 12, -6, -11, -3, 3, 3, 1]), &Config::default());
    assert_eq!(rep.angle_rank.as_ref().unwrap().value, 3);
    let even = rep.applicability.iter().find(|a| a.theorem == "remark:even-g").unwrap();
    assert!(even.applies);
    assert!(even.reason.contains("holds for A itself"));
    assert!(!rep.applies("main:general"));
    let c6 = rep.corollary_checks.iter().find(|c| c.id == "C6").unwrap();
    assert!(c6.pass);
}

#[test]
fn main_theorem_statement_for_simple_threefold_of_rank_two() {
    let rep = analyze(&Record::new("3.3", 3, &[27, 9, 12, 3, 4, 1, 1]), &Config::default());
    assert_eq!(rep.angle_rank.as_ref().unwrap().value, 2);
    let general = rep.applicability.iter().find(|a| a.theorem == "main:general").unwrap();
    assert!(general.applies && !general.conditional);
    assert!(general.reason.contains("holds for A×A and A×E"));
    assert!(!rep.is_failure());
}
