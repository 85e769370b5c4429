//! One line per acceptance criterion. Runs without the test harness so the
//! lines always reach the output.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use angle_rank::relations::{check_lemma_form, find_relation_lattice, upgrade_absolute_simplicity, LemmaVerdict};
use angle_rank::report::{analyze, canonical_elliptic, Record};
use angle_rank::spectrum::compute_spectrum;
use angle_rank::tate::{dimension_table, exotic_report, joint_lattice, CorollaryContext, VarietySpec};
use angle_rank::weil::{
    base_extend, classify_newton, enumerate_weil_polynomials, newton_polygon, simplicity, AbsoluteSimplicity,
    NewtonClass, WeilPolynomial,
};
use angle_rank::Config;
use common::{compare_with_oracle, Levels};
use rayon::prelude::*;

const CRITERION_1_LIMIT: Duration = Duration::from_secs(1);
const CRITERION_2_LIMIT: Duration = Duration::from_secs(5);
const CRITERION_4_LIMIT: Duration = Duration::from_secs(60);
const CRITERION_6_LIMIT: Duration = Duration::from_secs(30);

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn supersingular_curve_rank() -> Outcome {
    let config = Config::default();
    let start = Instant::now();
    let f = WeilPolynomial::from_i64s(&[2, 0, 1], 2).unwrap();
    let s = compute_spectrum(&f, config.precision_bits, &config).unwrap();
    let lat = find_relation_lattice(&s, &config);
    let t = start.elapsed();
    outcome(
        lat.angle_rank == 0 && lat.is_certified() && t < CRITERION_1_LIMIT,
        format!("x^2+2 over F_2: angle rank {} [{:?}] in {t:?} (limit {CRITERION_1_LIMIT:?})", lat.angle_rank, lat.status),
    )
}

fn lemma_reproduction() -> Outcome {
    let config = Config::default();
    let mut passes = Vec::new();
    let mut slowest = Duration::ZERO;
    for q in [2u64, 3] {
        for f in enumerate_weil_polynomials(3, q) {
            if classify_newton(&newton_polygon(&f), 3) != NewtonClass::AlmostOrdinary {
                continue;
            }
            let start = Instant::now();
            let s = compute_spectrum(&f, config.precision_bits, &config).unwrap();
            let v = simplicity(&f, &s, config.m_max, &config).unwrap();
            if !v.irreducible || v.absolutely_simple != AbsoluteSimplicity::HeuristicYes(config.m_max) {
                continue;
            }
            let lat = find_relation_lattice(&s, &config);
            if lat.angle_rank != 2 {
                continue;
            }
            let lemma = check_lemma_form(&lat, &upgrade_absolute_simplicity(&v, &lat));
            slowest = slowest.max(start.elapsed());
            if let LemmaVerdict::Pass { n, .. } = lemma.verdict {
                passes.push(format!("{:?}/F_{q} N={n}", f.coeffs_i64().unwrap()));
            } else {
                return outcome(false, format!("{f}: {:?}", lemma.verdict));
            }
        }
    }
    outcome(
        passes.len() >= 3 && slowest < CRITERION_2_LIMIT,
        format!(
            "{} irreducible almost-ordinary sextics over F_2, F_3 with HeuristicYes and rank 2 all Pass, slowest {slowest:?}; e.g. {}",
            passes.len(),
            passes[..3.min(passes.len())].join(", ")
        ),
    )
}

fn corollary_reproduction() -> Outcome {
    let config = Config::default();
    let mut records: Vec<Record> = Vec::new();
    for q in [2u64, 3] {
        for g in [2, 3] {
            for f in enumerate_weil_polynomials(g, q) {
                records.push(Record::new(&format!("{g}.{q}.{}", records.len()), q, &f.coeffs_i64().unwrap()));
            }
        }
    }
    for f in enumerate_weil_polynomials(4, 2) {
        records.push(Record::new(&format!("4.2.{}", records.len()), 2, &f.coeffs_i64().unwrap()));
    }
    records.push(Record::new("7.101.generic", 101, &common::genus_seven().coeffs_i64().unwrap()));
    let reports: Vec<_> = records.par_iter().map(|r| analyze(r, &config)).collect();
    let general: Vec<_> = reports.iter().filter(|r| r.applies("main:general")).collect();
    let even: Vec<_> = reports
        .iter()
        .filter(|r| r.corollary_checks.iter().any(|c| c.id == "C6"))
        .collect();
    let mut ids = std::collections::BTreeMap::<String, usize>::new();
    let mut failures = Vec::new();
    for r in general.iter().chain(even.iter()) {
        for c in &r.corollary_checks {
            *ids.entry(c.id.clone()).or_default() += 1;
            if !c.pass {
                failures.push(format!("{} {} {}", r.label, c.table, c.id));
            }
        }
        if !r.errors.is_empty() {
            failures.push(format!("{} errors {:?}", r.label, r.errors));
        }
    }
    let by_rank = |k: usize| general.iter().filter(|r| r.g.unwrap() - r.angle_rank.as_ref().unwrap().value == k).count();
    outcome(
        failures.is_empty() && !general.is_empty(),
        format!(
            "{} main:general entries ({} at rank g, {} at rank g-1), {} even-g entries with C6; checks {:?}; failures {:?}",
            general.len(),
            by_rank(0),
            by_rank(1),
            even.len(),
            ids,
            failures
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let config = Config::default();
    let wide = Config { max_precision_bits: 1 << 16, ..Config::default() };
    let (ss, ord) = canonical_elliptic(2, 1);
    let curves: Vec<_> = [(ss, NewtonClass::Supersingular), (ord, NewtonClass::Ordinary)]
        .into_iter()
        .map(|(tr, class)| {
            let e = WeilPolynomial::from_i64s(&[2, -tr, 1], 2).unwrap();
            (tr, class, compute_spectrum(&e, 128, &config).unwrap(), compute_spectrum(&e, 128, &wide).unwrap())
        })
        .collect();
    let corpus = common::generated_corpus();
    let tallies: Vec<(usize, usize, usize)> = corpus
        .par_iter()
        .map(|f| {
            let s = compute_spectrum(f, 128, &config).unwrap();
            let sw = compute_spectrum(f, 128, &wide).unwrap();
            let lat = find_relation_lattice(&s, &config);
            let d = config.denom_bound_for(f.g() + 1);
            let own = Levels::new(&sw, None);
            let mut t = (0, 0, 0);
            let mut add = |x: common::OracleTally| {
                t.0 += x.profiles;
                t.1 += x.mismatches;
                t.2 += x.undecided;
            };
            for x in [VarietySpec::self_product(&s), VarietySpec::single(&s)] {
                add(compare_with_oracle(&x, &lat, &own, d));
            }
            for (tr, class, e, ew) in &curves {
                let x = VarietySpec::product_with_e(&s, e, *tr, *class);
                add(compare_with_oracle(&x, &joint_lattice(&s, e, &config), &Levels::new(&sw, Some(ew)), d));
            }
            t
        })
        .collect();
    let (p, m, u) = tallies.iter().fold((0, 0, 0), |a, t| (a.0 + t.0, a.1 + t.1, a.2 + t.2));
    let t = start.elapsed();
    outcome(
        m == 0 && u == 0 && t < CRITERION_4_LIMIT,
        format!(
            "{} polynomials with g <= 3 over F_2, tables AxA, A, AxE_ss, AxE_ord: {p} profiles, {m} mismatches, {u} undecided, {t:?} (limit {CRITERION_4_LIMIT:?})",
            corpus.len()
        ),
    )
}

fn invariant_suite() -> Outcome {
    let config = Config::default();
    let corpus = common::generated_corpus();
    let failures: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|f| {
            let mut bad = Vec::new();
            let s = compute_spectrum(f, 128, &config).unwrap();
            let lat = find_relation_lattice(&s, &config);
            for x in [VarietySpec::self_product(&s), VarietySpec::single(&s)] {
                let rows = dimension_table(&x, &lat).unwrap();
                let top = 2 * x.dim();
                for r in &rows {
                    let dual = rows.iter().find(|d| d.degree == top - r.degree);
                    if dual.map(|d| d.tate) != Some(r.tate) {
                        bad.push(format!("{f}: duality at {}", r.degree));
                    }
                    if r.lefschetz > r.tate || r.exotic != r.tate - r.lefschetz {
                        bad.push(format!("{f}: lefschetz > tate at {}", r.degree));
                    }
                }
            }
            for m in [2, 3] {
                let sm = compute_spectrum(&base_extend(f, m), 128, &config).unwrap();
                if find_relation_lattice(&sm, &config).angle_rank != lat.angle_rank {
                    bad.push(format!("{f}: angle rank changes under base extension {m}"));
                }
            }
            bad
        })
        .collect();
    let small: Vec<_> = corpus.iter().filter(|f| f.g() <= 2).collect();
    let mut products = 0;
    let mut polygon_failures = 0;
    for a in &small {
        for b in small.iter().step_by(5) {
            products += 1;
            if newton_polygon(&a.product(b).unwrap()) != newton_polygon(a).union(&newton_polygon(b)) {
                polygon_failures += 1;
            }
        }
    }
    outcome(
        failures.is_empty() && polygon_failures == 0 && corpus.len() >= 100,
        format!(
            "{} polynomials (g = 1, 2, 3): duality, lefschetz <= tate, exotic >= 0, base extension m = 2, 3; {products} products for polygon additivity; failures {:?}, polygon failures {polygon_failures}",
            corpus.len(),
            failures
        ),
    )
}

fn genus_seven_performance() -> Outcome {
    let config = Config::default();
    let run = |f: &WeilPolynomial, threads: usize| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let start = Instant::now();
            let s = compute_spectrum(f, config.precision_bits, &config).unwrap();
            let lat = find_relation_lattice(&s, &config);
            let x = VarietySpec::self_product(&s);
            let ctx = CorollaryContext { g: 7, angle_rank: lat.angle_rank, simple: true };
            let rep = exotic_report(&x, &lat, Some(&ctx)).unwrap();
            (rep, lat.angle_rank, x.profile_count(), start.elapsed())
        })
    };
    let mut pass = true;
    let mut details = Vec::new();
    for (name, f) in [("generic over F_101", common::genus_seven()), ("product over F_2", common::genus_seven_product())] {
        let (single, rank, profiles, t) = run(&f, 1);
        let (multi, _, _, _) = run(&f, 4);
        let mid = single.row(single.middle_degree).unwrap();
        let same = single.rows == multi.rows;
        pass &= t < CRITERION_6_LIMIT && same;
        details.push(format!(
            "{name}: rank {rank}, {profiles} profiles, middle tate {} lefschetz {} exotic {}, single-threaded {t:?}, 1 vs 4 threads identical: {same}",
            mid.tate, mid.lefschetz, mid.exotic
        ));
    }
    outcome(pass, format!("g = 7 AxA (limit {CRITERION_6_LIMIT:?}); {}", details.join("; ")))
}

fn corpus_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_angle-rank");
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/starter.jsonl");
    let run = |threads: &str| Command::new(bin).args(["corpus", path, "--json", "--threads", threads]).output().unwrap();
    let a = run("1");
    let b = run("4");
    let c = run("4");
    outcome(
        a.status.success() && a.stdout == b.stdout && b.stdout == c.stdout && !a.stdout.is_empty(),
        format!("starter corpus, three runs (1, 4, 4 threads): {} bytes each, identical: {}", a.stdout.len(), a.stdout == b.stdout && b.stdout == c.stdout),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("supersingular elliptic curve angle rank", supersingular_curve_rank),
        ("lemma reproduction", lemma_reproduction),
        ("corollary reproduction", corollary_reproduction),
        ("oracle equivalence", oracle_equivalence),
        ("invariant suite", invariant_suite),
        ("genus seven performance", genus_seven_performance),
        ("corpus determinism", corpus_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {} {}: {} [{:.2?}] {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            o.detail
        );
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
