//! Corpus records, the analysis pipeline and machine-readable reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::relations::{
    check_lemma_form, direct_rationality, find_relation_lattice, galois_stability_probe,
    upgrade_absolute_simplicity, AngleLattice, LatticeStatus, LemmaVerdict, Status,
};
use crate::spectrum::compute_spectrum;
use crate::tate::{exotic_report, is_tate, joint_lattice, CorollaryContext, DegreeRow, VarietySpec};
use crate::weil::{
    base_extend, classify_newton, newton_polygon, parse_weil, simplicity, AbsoluteSimplicity,
    IrreducibilityCertificate, NewtonClass, WeilPolynomial,
};
use crate::{Config, Error, Result};

/// One corpus line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub label: String,
    pub q: u64,
    pub coeffs: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_trace: Option<i64>,
}

impl Record {
    pub fn new(label: &str, q: u64, coeffs: &[i64]) -> Record {
        Record {
            label: label.to_string(),
            q,
            coeffs: coeffs.to_vec(),
            e_trace: None,
        }
    }

    pub fn weil(&self) -> Result<WeilPolynomial> {
        let c: Vec<Integer> = self.coeffs.iter().map(|&x| Integer::from(x)).collect();
        parse_weil(&c, &Integer::from(self.q))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleReport {
    pub irreducible: bool,
    pub absolutely_simple: String,
    pub m_checked: u32,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturatedReport {
    pub e: Vec<i64>,
    pub value: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleRankReport {
    pub value: usize,
    pub certified: bool,
    pub status: LatticeStatus,
    pub precision_bits: u32,
    /// Γ₁ basis as `(e_1, …, e_g, e_0)`.
    pub relations: Vec<Vec<i64>>,
    pub saturated: Vec<SaturatedReport>,
    pub galois_probe: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub verdict: String,
    #[serde(rename = "N")]
    pub n: Option<i64>,
    pub signs: Option<Vec<i8>>,
    pub witness: Option<Vec<i64>>,
    pub critical: bool,
    pub certified: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    #[serde(rename = "AxA")]
    pub axa: Option<Vec<DegreeRow>>,
    #[serde(rename = "AxE_ss")]
    pub axe_ss: Option<Vec<DegreeRow>>,
    #[serde(rename = "AxE_ord")]
    pub axe_ord: Option<Vec<DegreeRow>>,
    #[serde(rename = "A")]
    pub a: Option<Vec<DegreeRow>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub table: String,
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Applicability {
    pub theorem: String,
    pub applies: bool,
    pub conditional: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticChoice {
    pub supersingular_trace: i64,
    pub ordinary_trace: i64,
    pub supplied: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageError {
    pub stage: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub label: String,
    pub input: Record,
    pub g: Option<usize>,
    pub q: u64,
    pub p: Option<u64>,
    pub newton_class: Option<String>,
    pub simple: Option<SimpleReport>,
    pub angle_rank: Option<AngleRankReport>,
    pub lemma: Option<LemmaReport>,
    pub elliptic_curves: Option<EllipticChoice>,
    pub tables: Tables,
    pub table_certified: BTreeMap<String, bool>,
    pub corollary_checks: Vec<CheckReport>,
    pub applicability: Vec<Applicability>,
    pub errors: Vec<StageError>,
}

impl ConjectureReport {
    fn empty(record: &Record) -> ConjectureReport {
        ConjectureReport {
            label: record.label.clone(),
            input: record.clone(),
            g: None,
            q: record.q,
            p: None,
            newton_class: None,
            simple: None,
            angle_rank: None,
            lemma: None,
            elliptic_curves: None,
            tables: Tables::default(),
            table_certified: BTreeMap::new(),
            corollary_checks: Vec::new(),
            applicability: Vec::new(),
            errors: Vec::new(),
        }
    }

    fn fail(&mut self, stage: &str, e: impl ToString) {
        self.errors.push(StageError {
            stage: stage.to_string(),
            message: e.to_string(),
        });
    }

    /// A stage error, a failed corollary check or a critical lemma failure.
    pub fn is_failure(&self) -> bool {
        !self.errors.is_empty()
            || self.corollary_checks.iter().any(|c| !c.pass)
            || self.lemma.as_ref().is_some_and(|l| l.critical)
    }

    pub fn applies(&self, theorem: &str) -> bool {
        self.applicability.iter().any(|a| a.theorem == theorem && a.applies)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Whether `a` is the trace of an elliptic curve over `F_{p^r}`.
pub fn classify_elliptic_trace(a: i64, p: u64, r: u32) -> Option<NewtonClass> {
    let q = Integer::from(p).pow(r);
    let a2 = Integer::from(a) * a;
    if a2 > Integer::from(&q * 4u32) {
        return None;
    }
    if !a.unsigned_abs().is_multiple_of(p) {
        return Some(NewtonClass::Ordinary);
    }
    let ok = if r % 2 == 1 {
        a == 0 || (p == 2 && a2 == Integer::from(&q * 2u32)) || (p == 3 && a2 == Integer::from(&q * 3u32))
    } else {
        a2 == Integer::from(&q * 4u32) || (a2 == q && p % 3 != 1) || (a == 0 && p % 4 != 1)
    };
    ok.then_some(NewtonClass::Supersingular)
}

/// Canonical supersingular and ordinary traces over `F_{p^r}`.
pub fn canonical_elliptic(p: u64, r: u32) -> (i64, i64) {
    let ss = if classify_elliptic_trace(0, p, r).is_some() {
        0
    } else {
        let s = Integer::from(p).pow(r / 2).to_i64().expect("sqrt q fits");
        if classify_elliptic_trace(s, p, r).is_some() {
            s
        } else {
            2 * s
        }
    };
    (ss, 1)
}

/// Theorem applicability as a pure function of the inputs that matter.
pub fn applicability(
    simple: Option<AbsoluteSimplicity>,
    g: usize,
    angle_rank: Option<usize>,
    certified: bool,
    newton: NewtonClass,
) -> Vec<Applicability> {
    let is_simple = simple.is_some_and(|s| s.is_simple());
    let heuristic_simple = matches!(simple, Some(AbsoluteSimplicity::HeuristicYes(_)));
    let near_full = angle_rank.is_some_and(|r| r + 1 >= g && r <= g);
    let rank_str = angle_rank.map_or("unknown".to_string(), |r| r.to_string());
    let conditions = |uses_rank: bool| -> (bool, String) {
        let mut c = Vec::new();
        if heuristic_simple {
            c.push("heuristic absolute simplicity");
        }
        if uses_rank && !certified {
            c.push("heuristic angle rank");
        }
        (!c.is_empty(), if c.is_empty() { String::new() } else { format!("conditional on {}; ", c.join(" and ")) })
    };
    let is_prime = g >= 2 && (2..g).take_while(|d| d * d <= g).all(|d| !g.is_multiple_of(d));
    let mut out = Vec::new();

    let general = is_simple && g % 2 == 1 && g > 1 && near_full;
    let (cond, pre) = conditions(true);
    let reason = if general {
        format!("{pre}simple, g = {g} odd, angle rank {rank_str} in {{g-1, g}}: the conjecture holds for A×A and A×E")
    } else if !is_simple {
        "absolute simplicity not established".to_string()
    } else if g.is_multiple_of(2) || g == 1 {
        format!("needs odd g > 1, got g = {g}")
    } else {
        format!("angle rank {rank_str} not in {{g-1, g}}")
    };
    out.push(Applicability {
        theorem: "main:general".into(),
        applies: general,
        conditional: general && cond,
        reason,
    });

    let prime = is_simple && is_prime;
    let (cond, pre) = conditions(false);
    let mut reason = if prime {
        format!("{pre}simple of prime dimension {g}: the conjecture holds for A×A and A×E")
    } else if !is_simple {
        "absolute simplicity not established".to_string()
    } else {
        format!("dimension {g} is not prime")
    };
    if prime && g % 2 == 1 && !general {
        reason.push_str("; inconsistent: odd prime dimension should force angle rank g-1 or g");
    }
    out.push(Applicability {
        theorem: "main:prime-dim".into(),
        applies: prime,
        conditional: prime && cond,
        reason,
    });

    let ao = is_simple && newton == NewtonClass::AlmostOrdinary;
    let (cond, pre) = conditions(false);
    let mut reason = if ao {
        format!("{pre}absolutely simple and almost ordinary: the conjecture holds for A×A and A×E")
    } else if !is_simple {
        "absolute simplicity not established".to_string()
    } else {
        format!("Newton polygon is {}", newton.as_str())
    };
    if ao {
        let expected = if g % 2 == 1 { g - 1 } else { g };
        if angle_rank.is_some_and(|r| r != expected) {
            reason.push_str(&format!("; inconsistent: almost ordinary forces angle rank {expected}"));
        }
    }
    out.push(Applicability {
        theorem: "main:almost-ordinary".into(),
        applies: ao,
        conditional: ao && cond,
        reason,
    });

    let even = g.is_multiple_of(2) && near_full;
    let (cond, pre) = conditions(true);
    let reason = if even {
        format!("{pre}g = {g} even, angle rank {rank_str} in {{g-1, g}}: holds for A itself")
    } else if g % 2 == 1 {
        format!("needs even g, got g = {g}")
    } else {
        format!("angle rank {rank_str} not in {{g-1, g}}")
    };
    out.push(Applicability {
        theorem: "remark:even-g".into(),
        applies: even,
        conditional: even && cond,
        reason,
    });

    let classical = angle_rank == Some(g)
        || (g == 1 && newton == NewtonClass::Supersingular && angle_rank == Some(0));
    let (cond, pre) = conditions(true);
    let reason = if classical {
        format!("{pre}every Tate class on A^n is Lefschetz; the Tate conjecture holds for A^n")
    } else {
        "angle rank below g and not a supersingular elliptic curve".to_string()
    };
    out.push(Applicability {
        theorem: "classical:lefschetz".into(),
        applies: classical,
        conditional: classical && cond,
        reason,
    });
    out
}

fn certificate_label(c: &IrreducibilityCertificate) -> String {
    match c {
        IrreducibilityCertificate::ModPrime(l) => format!("irreducible mod {l}"),
        IrreducibilityCertificate::SubsetExhaustion => "subset-factor exhaustion".into(),
        IrreducibilityCertificate::Factor(f) => format!("factor {f}"),
    }
}

fn absolute_label(a: AbsoluteSimplicity) -> &'static str {
    match a {
        AbsoluteSimplicity::Yes(_) => "Yes",
        AbsoluteSimplicity::HeuristicYes(_) => "HeuristicYes",
        AbsoluteSimplicity::No(_) => "No",
    }
}

fn angle_rank_report(lat: &AngleLattice) -> AngleRankReport {
    AngleRankReport {
        value: lat.angle_rank,
        certified: lat.is_certified(),
        status: lat.status,
        precision_bits: lat.params.precision_bits,
        relations: lat
            .relations
            .iter()
            .map(|(e, e0)| e.iter().copied().chain(std::iter::once(*e0)).collect())
            .collect(),
        saturated: lat
            .basis_saturated
            .iter()
            .map(|v| SaturatedReport {
                e: v.e.clone(),
                value: v.value.to_string(),
                status: v.certificate.status,
            })
            .collect(),
        galois_probe: galois_stability_probe(lat),
    }
}

fn restrict(rows: Vec<DegreeRow>, degree: Option<usize>) -> Vec<DegreeRow> {
    match degree {
        Some(d) => rows.into_iter().filter(|r| r.degree == d).collect(),
        None => rows,
    }
}

/// Options that only shape the output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Keep only this degree in the tables.
    pub degree: Option<usize>,
}

/// Full pipeline for one record. Stage failures are recorded and the
/// remaining independent stages still run.
pub fn analyze(record: &Record, config: &Config) -> ConjectureReport {
    analyze_with(record, config, ReportOptions::default())
}

pub fn analyze_with(record: &Record, config: &Config, opts: ReportOptions) -> ConjectureReport {
    let mut rep = ConjectureReport::empty(record);
    let f = match record.weil() {
        Ok(f) => f,
        Err(e) => {
            rep.fail("parse", e);
            return rep;
        }
    };
    let g = f.g();
    rep.g = Some(g);
    rep.p = Some(f.p());
    let newton = classify_newton(&newton_polygon(&f), g);
    rep.newton_class = Some(format!("{newton:?}"));
    let spectrum = match compute_spectrum(&f, config.precision_bits, config) {
        Ok(s) => s,
        Err(e) => {
            rep.fail("spectrum", e);
            rep.applicability = applicability(None, g, None, false, newton);
            return rep;
        }
    };
    let lat = find_relation_lattice(&spectrum, config);
    let verdict = match simplicity(&f, &spectrum, config.m_max, config) {
        Ok(v) => Some(upgrade_absolute_simplicity(&v, &lat)),
        Err(e) => {
            rep.fail("simplicity", e);
            None
        }
    };
    rep.simple = verdict.as_ref().map(|v| SimpleReport {
        irreducible: v.irreducible,
        absolutely_simple: absolute_label(v.absolutely_simple).into(),
        m_checked: v.absolutely_simple.m(),
        certificate: certificate_label(&v.certificate),
    });
    rep.angle_rank = Some(angle_rank_report(&lat));
    if let Some(v) = &verdict {
        let l = check_lemma_form(&lat, v);
        let (n, signs, witness, critical) = match &l.verdict {
            LemmaVerdict::Pass { n, signs } => (Some(*n), Some(signs.clone()), None, false),
            LemmaVerdict::Fail { witness, critical } => (None, None, Some(witness.clone()), *critical),
            LemmaVerdict::NotApplicable => (None, None, None, false),
        };
        rep.lemma = Some(LemmaReport {
            verdict: l.label().into(),
            n,
            signs,
            witness,
            critical,
            certified: l.certified,
        });
    }
    let simple = verdict.as_ref().map(|v| v.absolutely_simple);
    let ctx = CorollaryContext {
        g,
        angle_rank: lat.angle_rank,
        simple: verdict.as_ref().is_some_and(|v| v.irreducible && v.absolutely_simple.is_simple()),
    };

    let (ss_default, ord_default) = canonical_elliptic(f.p(), f.r());
    let supplied = record.e_trace;
    let mut ss_trace = ss_default;
    let mut ord_trace = ord_default;
    if let Some(a) = supplied {
        match classify_elliptic_trace(a, f.p(), f.r()) {
            Some(NewtonClass::Supersingular) => ss_trace = a,
            Some(_) => ord_trace = a,
            None => rep.fail("elliptic", format!("{a} is not the trace of an elliptic curve over F_{}", record.q)),
        }
    }
    rep.elliptic_curves = Some(EllipticChoice {
        supersingular_trace: ss_trace,
        ordinary_trace: ord_trace,
        supplied,
    });

    let mut run = |name: &str, x: Result<(VarietySpec, AngleLattice)>| -> Option<Vec<DegreeRow>> {
        let r = x.and_then(|(x, l)| exotic_report(&x, &l, Some(&ctx)));
        match r {
            Ok(r) => {
                rep.table_certified.insert(name.to_string(), r.certified);
                rep.corollary_checks.extend(r.corollary_checks.iter().map(|c| CheckReport {
                    table: name.to_string(),
                    id: c.id.clone(),
                    pass: c.pass,
                    detail: c.detail.clone(),
                }));
                Some(restrict(r.rows, opts.degree))
            }
            Err(e) => {
                rep.fail(&format!("tables:{name}"), e);
                None
            }
        }
    };
    let with_e = |trace: i64, class: NewtonClass| -> Result<(VarietySpec, AngleLattice)> {
        let e = WeilPolynomial::from_i64s(&[record.q as i64, -trace, 1], record.q)?;
        let es = compute_spectrum(&e, config.precision_bits, config)?;
        let joint = joint_lattice(&spectrum, &es, config);
        Ok((VarietySpec::product_with_e(&spectrum, &es, trace, class), joint))
    };
    let tables = Tables {
        axa: run("AxA", Ok((VarietySpec::self_product(&spectrum), lat.clone()))),
        axe_ss: run("AxE_ss", with_e(ss_trace, NewtonClass::Supersingular)),
        axe_ord: run("AxE_ord", with_e(ord_trace, NewtonClass::Ordinary)),
        a: run("A", Ok((VarietySpec::single(&spectrum), lat.clone()))),
    };
    rep.tables = tables;
    rep.applicability = applicability(simple, g, Some(lat.angle_rank), lat.is_certified(), newton);
    rep
}

/// Human-readable rendering.
pub fn render_text(r: &ConjectureReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  q = {}  coeffs = {:?}", r.label, r.q, r.input.coeffs);
    if let (Some(g), Some(p)) = (r.g, r.p) {
        let _ = writeln!(s, "  g = {g}, p = {p}, Newton class {}", r.newton_class.as_deref().unwrap_or("?"));
    }
    if let Some(sr) = &r.simple {
        let _ = writeln!(
            s,
            "  irreducible {} ({}), absolutely simple {} (m <= {})",
            sr.irreducible, sr.certificate, sr.absolutely_simple, sr.m_checked
        );
    }
    if let Some(a) = &r.angle_rank {
        let _ = writeln!(
            s,
            "  angle rank {} [{:?}, {} bits], relations {:?}",
            a.value, a.status, a.precision_bits, a.relations
        );
    }
    if let Some(l) = &r.lemma {
        let _ = writeln!(s, "  lemma {} N = {:?} signs = {:?}", l.verdict, l.n, l.signs);
    }
    for (name, rows) in [
        ("AxA", &r.tables.axa),
        ("AxE_ss", &r.tables.axe_ss),
        ("AxE_ord", &r.tables.axe_ord),
        ("A", &r.tables.a),
    ] {
        if let Some(rows) = rows {
            let _ = writeln!(s, "  {name}: degree tate/lefschetz/exotic");
            for row in rows {
                let _ = writeln!(s, "    {:>3}  {} / {} / {}", row.degree, row.tate, row.lefschetz, row.exotic);
            }
        }
    }
    for c in &r.corollary_checks {
        let _ = writeln!(s, "  {} {} {} ({})", c.table, c.id, if c.pass { "pass" } else { "FAIL" }, c.detail);
    }
    for a in &r.applicability {
        let _ = writeln!(s, "  {:<22} {:<5} {}", a.theorem, a.applies, a.reason);
    }
    for e in &r.errors {
        let _ = writeln!(s, "  error [{}]: {}", e.stage, e.message);
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub records: usize,
    pub failures: usize,
    pub newton_classes: BTreeMap<String, usize>,
    pub angle_rank_histogram: BTreeMap<usize, usize>,
    pub corollary_failures: Vec<String>,
    pub lemma: BTreeMap<String, usize>,
    pub theorem_applies: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusOutput {
    pub summary: CorpusSummary,
    pub reports: Vec<ConjectureReport>,
}

impl CorpusOutput {
    pub fn exit_code(&self) -> u8 {
        if self.summary.failures > 0 {
            2
        } else {
            0
        }
    }
}

pub fn summarize(reports: &[ConjectureReport]) -> CorpusSummary {
    let mut s = CorpusSummary {
        records: reports.len(),
        ..Default::default()
    };
    for r in reports {
        if r.is_failure() {
            s.failures += 1;
        }
        if let Some(n) = &r.newton_class {
            *s.newton_classes.entry(n.clone()).or_default() += 1;
        }
        if let Some(a) = &r.angle_rank {
            *s.angle_rank_histogram.entry(a.value).or_default() += 1;
        }
        for c in r.corollary_checks.iter().filter(|c| !c.pass) {
            s.corollary_failures.push(format!("{} {} {}", r.label, c.table, c.id));
        }
        if let Some(l) = &r.lemma {
            *s.lemma.entry(l.verdict.clone()).or_default() += 1;
        }
        for a in r.applicability.iter().filter(|a| a.applies) {
            *s.theorem_applies.entry(a.theorem.clone()).or_default() += 1;
        }
    }
    s
}

/// Parse JSONL corpus text. Unparseable lines become failed reports.
pub fn parse_corpus(text: &str) -> Vec<std::result::Result<Record, (usize, String)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str::<Record>(l).map_err(|e| (i + 1, e.to_string())))
        .collect()
}

pub fn run_corpus_text(text: &str, config: &Config, opts: ReportOptions) -> CorpusOutput {
    let reports: Vec<ConjectureReport> = parse_corpus(text)
        .into_par_iter()
        .map(|r| match r {
            Ok(rec) => analyze_with(&rec, config, opts),
            Err((line, msg)) => {
                let mut rep = ConjectureReport::empty(&Record::new(&format!("line {line}"), 0, &[]));
                rep.fail("parse", Error::MalformedRow { line, reason: msg });
                rep
            }
        })
        .collect();
    CorpusOutput {
        summary: summarize(&reports),
        reports,
    }
}

pub fn run_corpus(path: &Path, config: &Config) -> Result<CorpusOutput> {
    run_corpus_with(path, config, ReportOptions::default())
}

pub fn run_corpus_with(path: &Path, config: &Config, opts: ReportOptions) -> Result<CorpusOutput> {
    let text = std::fs::read_to_string(path)?;
    Ok(run_corpus_text(&text, config, opts))
}

/// The bundled three-curve corpus over `F_2`.
pub const STARTER_CORPUS: &str = include_str!("../data/starter.jsonl");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestRow {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestOutcome {
    pub rows: Vec<SelftestRow>,
}

impl SelftestOutcome {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn table(&self) -> String {
        let w = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        self.rows
            .iter()
            .map(|r| format!("{:<w$}  {}  {}\n", r.name, if r.pass { "pass" } else { "FAIL" }, r.detail))
            .collect()
    }
}

/// Built-in inputs for the self test: label, q, coefficients.
pub const SELFTEST_INPUTS: &[(&str, u64, &[i64])] = &[
    ("ss-elliptic", 2, &[2, 0, 1]),
    ("ord-elliptic", 2, &[2, -1, 1]),
    ("eighth-root", 2, &[2, -2, 1]),
    ("ss-square", 2, &[4, 0, 4, 0, 1]),
    ("sextic-product", 2, &[8, 0, 10, 0, 5, 0, 1]),
    ("ao-threefold", 2, &[8, 8, 2, 0, 1, 2, 1]),
];

/// Invariant suite on the built-in inputs.
pub fn selftest(config: &Config) -> SelftestOutcome {
    let mut rows = Vec::new();
    let mut push = |name: String, pass: bool, detail: String| rows.push(SelftestRow { name, pass, detail });
    for &(label, q, c) in SELFTEST_INPUTS {
        let f = WeilPolynomial::from_i64s(c, q).expect("built-in input is valid");
        let s = match compute_spectrum(&f, config.precision_bits, config) {
            Ok(s) => s,
            Err(e) => {
                push(format!("{label}: spectrum"), false, e.to_string());
                continue;
            }
        };
        let lat = find_relation_lattice(&s, config);
        push(
            format!("{label}: lattice certified"),
            lat.is_certified(),
            format!("angle rank {} [{:?}]", lat.angle_rank, lat.status),
        );
        let mut ranks = Vec::new();
        for m in [2, 3] {
            let fm = base_extend(&f, m);
            match compute_spectrum(&fm, config.precision_bits, config) {
                Ok(sm) => ranks.push(find_relation_lattice(&sm, config).angle_rank),
                Err(e) => push(format!("{label}: base extension {m}"), false, e.to_string()),
            }
        }
        push(
            format!("{label}: base-extension invariance"),
            ranks.iter().all(|&r| r == lat.angle_rank),
            format!("ranks {} / {:?}", lat.angle_rank, ranks),
        );
        let x = VarietySpec::self_product(&s);
        match exotic_report(&x, &lat, None) {
            Ok(rep) => {
                let n = rep.rows.len();
                let dual = (0..n).all(|i| {
                    rep.rows[i].tate == rep.rows[n - 1 - i].tate
                        && rep.rows[i].lefschetz == rep.rows[n - 1 - i].lefschetz
                        && rep.rows[i].lefschetz <= rep.rows[i].tate
                });
                push(format!("{label}: duality"), dual, format!("{} degrees", n));
            }
            Err(e) => push(format!("{label}: duality"), false, e.to_string()),
        }
        if f.g() <= 2 {
            let d = config.denom_bound_for(f.g());
            let a = s.refine(config.max_precision_bits.min(1024)).map(|r| r.angles());
            match a {
                Ok(a) => {
                    let mismatches = x
                        .profiles()
                        .iter()
                        .filter(|p| p.degree() % 2 == 0)
                        .filter(|p| is_tate(&x, p, &lat) != (direct_rationality(&a, &x.folded(p), d) != Status::Refuted))
                        .count();
                    push(format!("{label}: oracle equivalence"), mismatches == 0, format!("{mismatches} mismatches"));
                }
                Err(e) => push(format!("{label}: oracle equivalence"), false, e.to_string()),
            }
        }
        if f.g() == 3 {
            let v = simplicity(&f, &s, config.m_max, config).map(|v| upgrade_absolute_simplicity(&v, &lat));
            match v {
                Ok(v) => {
                    let l = check_lemma_form(&lat, &v);
                    push(
                        format!("{label}: lemma form"),
                        if v.irreducible && v.absolutely_simple.is_simple() {
                            matches!(l.verdict, LemmaVerdict::Pass { .. })
                        } else {
                            l.verdict == LemmaVerdict::NotApplicable
                        },
                        format!("{:?}", l.verdict),
                    );
                }
                Err(e) => push(format!("{label}: lemma form"), false, e.to_string()),
            }
        }
    }
    SelftestOutcome { rows }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImportOutcome {
    pub records: Vec<Record>,
    /// One `MalformedRow` per rejected row.
    pub rejected: Vec<Error>,
    pub warnings: Vec<String>,
}

impl ImportOutcome {
    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
            .collect()
    }
}

#[derive(Deserialize)]
struct LooseRecord {
    label: String,
    q: u64,
    #[serde(default)]
    coeffs: Option<Vec<i64>>,
    /// L-polynomial coefficients `1, a_1, …, q^g`, the reverse of `coeffs`.
    #[serde(default)]
    poly: Option<Vec<i64>>,
    #[serde(default)]
    e_trace: Option<i64>,
}

fn loose_to_record(l: LooseRecord) -> std::result::Result<Record, String> {
    let coeffs = match (l.coeffs, l.poly) {
        (Some(c), _) => c,
        (None, Some(mut p)) => {
            p.reverse();
            p
        }
        (None, None) => return Err("missing coeffs".into()),
    };
    Ok(Record {
        label: l.label,
        q: l.q,
        coeffs,
        e_trace: l.e_trace,
    })
}

fn parse_csv_row(line: &str) -> std::result::Result<Record, String> {
    let mut parts = line.splitn(3, ',');
    let label = parts.next().ok_or("missing label")?.trim().trim_matches('"').to_string();
    let q = parts
        .next()
        .ok_or("missing q")?
        .trim()
        .trim_matches('"')
        .parse::<u64>()
        .map_err(|e| format!("bad q: {e}"))?;
    let list = parts.next().ok_or("missing coefficients")?.trim().trim_matches('"');
    let coeffs: Vec<i64> = serde_json::from_str(list).map_err(|e| format!("bad coefficient list: {e}"))?;
    if label.is_empty() {
        return Err("empty label".into());
    }
    Ok(Record {
        label,
        q,
        coeffs,
        e_trace: None,
    })
}

/// Normalize a CSV (`label, q, [a_0, …]`), JSON array or JSONL export.
pub fn import_text(text: &str) -> ImportOutcome {
    let mut rows: Vec<(usize, std::result::Result<Record, String>)> = Vec::new();
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        match serde_json::from_str::<Vec<serde_json::Value>>(trimmed) {
            Ok(items) => {
                for (i, v) in items.into_iter().enumerate() {
                    let r = serde_json::from_value::<LooseRecord>(v)
                        .map_err(|e| e.to_string())
                        .and_then(loose_to_record);
                    rows.push((i + 1, r));
                }
            }
            Err(e) => rows.push((1, Err(e.to_string()))),
        }
    } else {
        for (i, line) in text.lines().enumerate() {
            let l = line.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let r = if l.starts_with('{') {
                serde_json::from_str::<LooseRecord>(l)
                    .map_err(|e| e.to_string())
                    .and_then(loose_to_record)
            } else {
                if i == 0 && l.to_ascii_lowercase().starts_with("label") {
                    continue;
                }
                parse_csv_row(l)
            };
            rows.push((i + 1, r));
        }
    }
    let mut out = ImportOutcome {
        records: Vec::new(),
        rejected: Vec::new(),
        warnings: Vec::new(),
    };
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (line, r) in rows {
        match r.and_then(|rec| rec.weil().map(|_| rec).map_err(|e| e.to_string())) {
            Ok(rec) => {
                if let Some(first) = seen.get(&rec.label) {
                    out.warnings.push(format!(
                        "duplicate label {} at line {line} (first at line {first})",
                        rec.label
                    ));
                } else {
                    seen.insert(rec.label.clone(), line);
                }
                out.records.push(rec);
            }
            Err(reason) => out.rejected.push(Error::MalformedRow { line, reason }),
        }
    }
    out
}

pub fn import_lmfdb(path: &Path) -> Result<ImportOutcome> {
    Ok(import_text(&std::fs::read_to_string(path)?))
}
