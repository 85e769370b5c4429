//! Multiplicative relations among the `β_i = q/α_i² = exp(-2πi t_i)`.
//!
//! `∏ β_i^{e_i} = 1` exactly when `Σ e_i t_i ∈ Z`, so the relation lattice
//! Γ₁ is the projection of the integer relations `(e, e_0)` of
//! `(t_1, …, t_n, 1)`. These are found by LLL on
//!
//! ```text
//! [ I_{n+1} | round(2^{P/2} · (t_1, …, t_n, 1))ᵀ ]
//! ```
//!
//! and accepted once the answer agrees at P and 2P and the Gram–Schmidt
//! norms prove that no relation of height ≤ B was missed. The saturation
//! Λ = {e : Σ e_i t_i ∈ Q} carries exact rational values.
//!
//! Certification uses a norm bound. With `h = Σ|e_i|`, `∏β^e = μ/ν` where
//! `μ, ν` are products of `h` eigenvalues, so `γ = μζ - ν` is an algebraic
//! integer whose conjugates have modulus at most `2 q^{h/2}`. If `γ ≠ 0`
//! then `|∏β^e ζ - 1| ≥ (2 q^{h/2})^{-(d-1)} q^{-h/2}`, and
//! `|exp(2πi x) - 1| ≤ 2π·dist(x, Z)` turns an angle enclosure into a proof.

use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::arith::Interval;
use crate::lattice::{self, Vector};
use crate::spectrum::{AngleSource, AngleVector};
use crate::weil::{AbsoluteSimplicity, SimplicityVerdict};
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Certified,
    Heuristic,
    Refuted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationCertificate {
    pub e: Vec<i64>,
    /// Claimed value of `Σ e_i t_i` modulo 1.
    pub claimed: Rational,
    pub status: Status,
    pub precision_bits: u32,
    /// `|∏β^e ζ - 1|` is at least `2^-separation_bits` unless it vanishes.
    pub separation_bits: u64,
    /// Bits between the proven deviation bound and the separation bound;
    /// positive iff certified by separation.
    pub separation_margin: i64,
}

fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Upper bound on the degree of `Q(α_{i_1}, …, α_{i_k}, ζ_b)` when the
/// eigenvalues come from `distinct` distinct trace roots.
fn field_degree_bound(distinct: usize, involved: usize, b: u64) -> f64 {
    let n = distinct.max(1);
    let k = involved.min(2 * n);
    let galois = (1..=n).fold(2f64.powi(n as i32), |acc, i| acc * i as f64);
    let adjoin = (0..k).fold(1f64, |acc, i| acc * (2 * n - i) as f64);
    galois.min(adjoin) * totient(b.max(1)) as f64
}

/// Bits of the separation bound for a relation of height `h`.
pub fn separation_bits(distinct: usize, e: &[i64], b: u64, q: &Integer) -> u64 {
    let h: f64 = e.iter().map(|x| x.unsigned_abs() as f64).sum();
    let involved = e.iter().filter(|x| **x != 0).count();
    let d = field_degree_bound(distinct, involved, b);
    let lq = q.significant_bits() as f64;
    let bits = (d - 1.0) * (1.0 + h * lq / 2.0) + h * lq / 2.0;
    bits.ceil() as u64 + 2
}

/// Precision at which angle enclosures are narrow enough to certify a
/// relation with the given separation bound.
fn precision_for(sep_bits: u64, e: &[i64]) -> u64 {
    let h: u64 = e.iter().map(|x| x.unsigned_abs()).sum();
    2 * (sep_bits + 64 - (h.max(1)).leading_zeros() as u64 + 8)
}

/// Decide `Σ e_i t_i ≡ claimed (mod 1)` from the given enclosures.
pub fn certify_relation(a: &AngleVector, e: &[i64], claimed: &Rational) -> RelationCertificate {
    let b = claimed.denom().to_u64().unwrap_or(u64::MAX);
    let sep = separation_bits(a.distinct_roots, e, b, &a.q);
    let prec = a.t.first().map_or(64, |x| x.prec());
    let x = a.combination(e).sub(&Interval::point_rational(prec, claimed));
    let mut cert = RelationCertificate {
        e: e.to_vec(),
        claimed: claimed.clone(),
        status: Status::Heuristic,
        precision_bits: a.precision_bits,
        separation_bits: sep,
        separation_margin: i64::MIN,
    };
    if !x.meets_integer() {
        cert.status = Status::Refuted;
        return cert;
    }
    let k = x.nearest_int();
    let dev = x.max_dist_to(&k);
    if dev == 0 {
        cert.status = Status::Certified;
        cert.separation_margin = i64::MAX;
        return cert;
    }
    // 2π·dev < 2^(exp + 3)
    let exp = dev.get_exp().map_or(i64::MIN / 2, |x| x as i64);
    cert.separation_margin = -(sep as i64) - (exp + 3);
    if cert.separation_margin > 0 {
        cert.status = Status::Certified;
    }
    cert
}

/// `certify_relation` after refining the source as far as the separation
/// bound requires; gives up (Heuristic) when that exceeds the precision cap.
pub fn certify_relation_refining<S: AngleSource>(
    source: &S,
    e: &[i64],
    claimed: &Rational,
) -> RelationCertificate {
    let current = match source.angles_at(source.precision_bits()) {
        Ok(a) => a,
        Err(_) => unreachable!("angles are available at the current precision"),
    };
    let first = certify_relation(&current, e, claimed);
    if first.status != Status::Heuristic {
        return first;
    }
    let needed = precision_for(first.separation_bits, e);
    if needed > source.max_precision_bits() as u64 {
        return first;
    }
    match source.angles_at(needed as u32) {
        Ok(a) => certify_relation(&a, e, claimed),
        Err(_) => first,
    }
}

/// Search parameters recorded with every lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub height_bound: i64,
    pub denom_bound: u64,
    /// Precision at which the reported lattice was detected.
    pub precision_bits: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeStatus {
    /// Stable, complete up to the height bound, every basis vector proved.
    Certified,
    /// Stable and numerically consistent, but not fully proved.
    Heuristic,
    /// Detection disagreed across precisions up to the cap.
    Unstable,
}

/// A basis vector of Λ with its exact value `Σ e_i t_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SaturatedVector {
    pub e: Vec<i64>,
    pub value: Rational,
    pub certificate: RelationCertificate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleLattice {
    pub dim: usize,
    /// Hermite basis of Γ₁ as pairs `(e, e_0)` with `Σ e_i t_i + e_0 = 0`.
    pub relations: Vec<(Vec<i64>, i64)>,
    pub certificates: Vec<RelationCertificate>,
    pub basis_saturated: Vec<SaturatedVector>,
    /// `v ∈ Λ ⇔ complement · v = 0`.
    pub complement: Vec<Vec<i64>>,
    pub angle_rank: usize,
    pub status: LatticeStatus,
    /// Agreement of the detections at P and 2P.
    pub stable: bool,
    /// No relation of height ≤ B lies outside the detected span.
    pub complete: bool,
    pub params: SearchParams,
}

impl AngleLattice {
    /// Lattice with the given relations, taken on trust (status Heuristic).
    pub fn from_relations(dim: usize, relations: &[(Vec<i64>, i64)]) -> AngleLattice {
        let rows: Vec<Vector> = relations
            .iter()
            .map(|(e, e0)| {
                assert_eq!(e.len(), dim, "relation length");
                let mut v = lattice::to_vector(e);
                v.push(Integer::from(*e0));
                v
            })
            .collect();
        let rel = lattice::hnf(&rows);
        let (relations, sat, complement) = assemble(&rel, dim);
        let basis_saturated = sat
            .into_iter()
            .map(|(e, value)| SaturatedVector {
                certificate: RelationCertificate {
                    e: e.clone(),
                    claimed: frac(&value),
                    status: Status::Heuristic,
                    precision_bits: 0,
                    separation_bits: 0,
                    separation_margin: i64::MIN,
                },
                e,
                value,
            })
            .collect();
        AngleLattice {
            dim,
            angle_rank: dim - relations.len(),
            certificates: relations
                .iter()
                .map(|(e, e0)| RelationCertificate {
                    e: e.clone(),
                    claimed: frac(&Rational::from(-*e0)),
                    status: Status::Heuristic,
                    precision_bits: 0,
                    separation_bits: 0,
                    separation_margin: i64::MIN,
                })
                .collect(),
            relations,
            basis_saturated,
            complement,
            status: LatticeStatus::Heuristic,
            stable: false,
            complete: false,
            params: SearchParams {
                height_bound: 0,
                denom_bound: 0,
                precision_bits: 0,
            },
        }
    }

    pub fn basis_exact(&self) -> Vec<Vec<i64>> {
        self.relations.iter().map(|(e, _)| e.clone()).collect()
    }

    pub fn is_certified(&self) -> bool {
        self.status == LatticeStatus::Certified
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        self.complement
            .iter()
            .all(|row| row.iter().zip(v).map(|(a, b)| *a as i128 * *b as i128).sum::<i128>() == 0)
    }

    /// Exact value of `Σ v_i t_i` for `v ∈ Λ`.
    pub fn value_of(&self, v: &[i64]) -> Option<Rational> {
        let basis: Vec<Vector> = self.relations.iter().map(|(e, _)| lattice::to_vector(e)).collect();
        let c = lattice::coordinates(&basis, &lattice::to_vector(v))?;
        Some(
            c.iter()
                .zip(&self.relations)
                .fold(Rational::new(), |acc, (c, (_, e0))| acc - Rational::from(c * Integer::from(*e0))),
        )
    }
}

/// Fractional part in `[0, 1)`.
fn frac(x: &Rational) -> Rational {
    let fl = Integer::from(x.floor_ref());
    Rational::from(x - fl)
}

type Assembled = (Vec<(Vec<i64>, i64)>, Vec<(Vec<i64>, Rational)>, Vec<Vec<i64>>);

/// Split Hermite relation rows `(e | e_0)` and saturate their projection.
fn assemble(rel: &[Vector], dim: usize) -> Assembled {
    let relations: Vec<(Vec<i64>, i64)> = rel
        .iter()
        .map(|r| {
            let v = lattice::to_i64s(r);
            (v[..dim].to_vec(), v[dim])
        })
        .collect();
    let proj: Vec<Vector> = rel.iter().map(|r| r[..dim].to_vec()).collect();
    let (sat, comp) = lattice::saturate(&proj, dim);
    let sat = sat
        .iter()
        .map(|v| {
            let c = lattice::coordinates(&proj, v).expect("saturation lies in the rational span");
            let value = c
                .iter()
                .zip(&relations)
                .fold(Rational::new(), |acc, (c, (_, e0))| acc - Rational::from(c * Integer::from(*e0)));
            (lattice::to_i64s(v), value)
        })
        .collect();
    let comp = comp.iter().map(|r| lattice::to_i64s(r)).collect();
    (relations, sat, comp)
}

struct Detection {
    relations: Vec<Vector>,
    complete: bool,
}

fn detect(a: &AngleVector, height_bound: i64) -> Detection {
    let n = a.len();
    let shift = (a.precision_bits / 2).max(16);
    let scaled: Vec<Integer> = a
        .t
        .iter()
        .map(|t| {
            let m = Float::with_val(t.prec(), t.mid() << shift);
            m.to_integer().expect("finite angle")
        })
        .chain(std::iter::once(Integer::from(1) << shift))
        .collect();
    let rows: Vec<Vector> = (0..=n)
        .map(|j| {
            let mut r: Vector = (0..=n).map(|i| Integer::from((i == j) as i32)).collect();
            r.push(scaled[j].clone());
            r
        })
        .collect();
    let red = lattice::lll(rows);
    let prec = a.t.first().map_or(64, |x| x.prec());
    let mut found = Vec::new();
    for b in &red.basis {
        let e: Option<Vec<i64>> = b[..n]
            .iter()
            .map(|x| x.to_i64().filter(|v| v.abs() <= height_bound))
            .collect();
        let (Some(e), Some(e0)) = (e, b[n].to_i64()) else { break };
        if e.iter().all(|x| *x == 0) {
            break;
        }
        let x = a.combination(&e).add(&Interval::from_i64(prec, e0));
        if !x.contains_zero() {
            break;
        }
        found.push(b[..=n].to_vec());
    }
    let k = found.len();
    let width = a
        .t
        .iter()
        .map(|t| t.width())
        .fold(Float::with_val(64, 0), |m, w| if w > m { w } else { m });
    let cw = Float::with_val(64, width << shift).to_f64();
    let nb = n as f64 * height_bound as f64;
    let bound = (n as f64 * (height_bound as f64).powi(2) + nb * nb + (nb * (cw + 1.0) / 2.0).powi(2)) * 1.001 + 1.0;
    let bound = Rational::from_f64(bound).expect("finite bound");
    let complete = (k..red.basis.len()).all(|j| red.gs_norm_sqr(j) > bound);
    Detection {
        relations: lattice::hnf(&found),
        complete,
    }
}

impl SearchParams {
    pub fn from_config(config: &Config, dim: usize) -> SearchParams {
        SearchParams {
            height_bound: config.height_bound,
            denom_bound: config.denom_bound_for(dim),
            precision_bits: config.precision_bits,
        }
    }
}

/// Detect Γ₁ and Λ for the angles of `source`, escalating precision from
/// `config.precision_bits` until two consecutive detections agree and the
/// completeness bound holds.
pub fn find_relation_lattice<S: AngleSource>(source: &S, config: &Config) -> AngleLattice {
    let n = source.dimension();
    let mut params = SearchParams::from_config(config, n);
    let cap = source.max_precision_bits();
    let mut p = config.precision_bits.min(cap).max(source.precision_bits().min(cap));
    let b = params.height_bound;
    let first = source.angles_at(p).or_else(|_| source.angles_at(source.precision_bits()));
    let first = first.expect("angles available at the source precision");
    p = first.precision_bits;
    let mut prev = detect(&first, b);
    let mut stable = false;
    while let Some(next_p) = p.checked_mul(2).filter(|x| *x <= cap) {
        let Ok(a) = source.angles_at(next_p) else { break };
        let next = detect(&a, b);
        p = next_p;
        let agree = next.relations == prev.relations;
        prev = next;
        if agree && prev.complete {
            stable = true;
            break;
        }
    }
    params.precision_bits = p;
    let (relations, sat, complement) = assemble(&prev.relations, n);
    let certificates: Vec<RelationCertificate> = relations
        .iter()
        .map(|(e, e0)| certify_relation_refining(source, e, &frac(&Rational::from(-*e0))))
        .collect();
    let basis_saturated: Vec<SaturatedVector> = sat
        .into_iter()
        .map(|(e, value)| {
            let mut certificate = certify_relation_refining(source, &e, &frac(&value));
            if *value.denom() > params.denom_bound && certificate.status == Status::Certified {
                certificate.status = Status::Heuristic;
            }
            SaturatedVector { e, value, certificate }
        })
        .collect();
    let proved = certificates
        .iter()
        .chain(basis_saturated.iter().map(|s| &s.certificate))
        .all(|c| c.status == Status::Certified);
    let status = if !stable {
        LatticeStatus::Unstable
    } else if prev.complete && proved {
        LatticeStatus::Certified
    } else {
        LatticeStatus::Heuristic
    };
    AngleLattice {
        dim: n,
        angle_rank: n - relations.len(),
        relations,
        certificates,
        basis_saturated,
        complement,
        status,
        stable,
        complete: prev.complete,
        params,
    }
}

pub fn angle_rank(lat: &AngleLattice) -> usize {
    lat.angle_rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaVerdict {
    /// The generator is `N·(1, …, 1)` after inverting the β with sign −1.
    Pass { n: i64, signs: Vec<i8> },
    Fail { witness: Vec<i64>, critical: bool },
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub applicable: bool,
    pub verdict: LemmaVerdict,
    pub certified: bool,
}

impl LemmaCheck {
    pub fn label(&self) -> &'static str {
        match self.verdict {
            LemmaVerdict::Pass { .. } => "Pass",
            LemmaVerdict::Fail { .. } => "Fail",
            LemmaVerdict::NotApplicable => "NotApplicable",
        }
    }

    pub fn n(&self) -> Option<i64> {
        match self.verdict {
            LemmaVerdict::Pass { n, .. } => Some(n),
            _ => None,
        }
    }
}

/// Check that Γ₁, when of rank 1, is generated by `N·(±1, …, ±1)`.
pub fn check_lemma_form(lat: &AngleLattice, simple: &SimplicityVerdict) -> LemmaCheck {
    let certified = lat.is_certified();
    if lat.dim < 2 || lat.angle_rank + 1 != lat.dim {
        return LemmaCheck {
            applicable: false,
            verdict: LemmaVerdict::NotApplicable,
            certified,
        };
    }
    let gen = &lat.relations[0].0;
    let signs: Vec<i8> = gen.iter().map(|x| if *x < 0 { -1 } else { 1 }).collect();
    let abs: Vec<i64> = gen.iter().map(|x| x.abs()).collect();
    let verdict = if abs[0] > 0 && abs.iter().all(|x| *x == abs[0]) {
        LemmaVerdict::Pass { n: abs[0], signs }
    } else {
        LemmaVerdict::Fail {
            witness: gen.clone(),
            critical: certified && simple.irreducible && simple.absolutely_simple.is_simple(),
        }
    };
    LemmaCheck {
        applicable: true,
        verdict,
        certified,
    }
}

/// Whether some sign-twisted copy of Λ is stable under every coordinate
/// permutation (negation stability holds for any lattice). Checked on the
/// generators of the symmetric group: a transposition and an n-cycle.
pub fn galois_stability_probe(lat: &AngleLattice) -> bool {
    let n = lat.dim;
    if lat.basis_saturated.is_empty() || n <= 1 {
        return true;
    }
    let perms: Vec<Vec<usize>> = vec![
        (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect(),
        (0..n).map(|i| (i + 1) % n).collect(),
    ];
    let in_lattice = |v: &[i64]| lat.contains(v);
    (0..1u64 << (n - 1)).any(|mask| {
        let s: Vec<i64> = (0..n).map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 }).collect();
        lat.basis_saturated.iter().all(|b| {
            let neg: Vec<i64> = b.e.iter().map(|x| -x).collect();
            if !in_lattice(&neg) {
                return false;
            }
            // v ∈ sΛ ⇔ s·v ∈ Λ; apply σ to s·b and map back.
            let twisted: Vec<i64> = b.e.iter().zip(&s).map(|(x, y)| x * y).collect();
            perms.iter().all(|p| {
                let mut moved = vec![0; n];
                for i in 0..n {
                    moved[p[i]] = twisted[i];
                }
                let back: Vec<i64> = moved.iter().zip(&s).map(|(x, y)| x * y).collect();
                in_lattice(&back)
            })
        })
    })
}

/// Upgrade `HeuristicYes` to `Yes` when the relation search proves that no
/// quotient `α_i/α_j` or `α_i/ᾱ_i` is a root of unity: then every `f_m` is
/// irreducible. Such a root of unity has order `k` with
/// `sqrt(k/2) ≤ φ(k) ≤ 2g(2g-1)`, so `k·(e_i ± e_j)` has height within reach
/// of a complete search.
pub fn upgrade_absolute_simplicity(v: &SimplicityVerdict, lat: &AngleLattice) -> SimplicityVerdict {
    let AbsoluteSimplicity::HeuristicYes(m) = v.absolutely_simple else {
        return v.clone();
    };
    let n = lat.dim;
    let deg = (2 * n * (2 * n).saturating_sub(1)) as i64;
    let max_order = 2 * deg * deg;
    if !v.irreducible || !lat.complete || !lat.stable || 2 * max_order > lat.params.height_bound {
        return v.clone();
    }
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| (k == i) as i64).collect() };
    let mut suspects = Vec::new();
    for i in 0..n {
        suspects.push(unit(i));
        for j in i + 1..n {
            let (a, b) = (unit(i), unit(j));
            suspects.push(a.iter().zip(&b).map(|(x, y)| x + y).collect());
            suspects.push(a.iter().zip(&b).map(|(x, y)| x - y).collect());
        }
    }
    if suspects.iter().any(|s| lat.contains(s)) {
        return v.clone();
    }
    SimplicityVerdict {
        absolutely_simple: AbsoluteSimplicity::Yes(m),
        ..v.clone()
    }
}

/// Smallest-denominator rational in `[lo, hi]`, if its denominator is at
/// most `max_den`.
pub fn simplest_rational(x: &Interval, max_den: u64) -> Option<Rational> {
    let lo = x.lo().to_rational()?;
    let hi = x.hi().to_rational()?;
    let r = simplest_between(lo, hi, 0, max_den)?;
    (*r.denom() <= max_den).then_some(r)
}

fn simplest_between(lo: Rational, hi: Rational, depth: u32, max_den: u64) -> Option<Rational> {
    if depth > 2 * 64 {
        return None;
    }
    let fl = Integer::from(lo.floor_ref());
    if lo == fl {
        return Some(Rational::from(fl));
    }
    if &fl + Integer::from(1) <= hi {
        return Some(Rational::from(fl + 1u32));
    }
    let a = Rational::from(&hi - &fl).recip();
    let b = Rational::from(&lo - &fl).recip();
    let inner = simplest_between(a, b, depth + 1, max_den)?;
    if *inner.numer() > max_den {
        return None;
    }
    Some(Rational::from(fl) + inner.recip())
}

/// Direct test that `Σ v_i t_i ∈ Q`: continued-fraction reconstruction with
/// denominator at most `max_den`, then `certify_relation`. Returns the
/// certificate status, or `Refuted` when no candidate exists.
pub fn direct_rationality(a: &AngleVector, v: &[i64], max_den: u64) -> Status {
    let x = a.combination(v);
    match simplest_rational(&x, max_den) {
        None => Status::Refuted,
        Some(r) => certify_relation(a, v, &frac(&r)).status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{compute_spectrum, FrobeniusSpectrum};
    use crate::weil::{simplicity, WeilPolynomial};

    fn spec(c: &[i64], q: u64) -> FrobeniusSpectrum {
        let f = WeilPolynomial::from_i64s(c, q).unwrap();
        compute_spectrum(&f, 128, &Config::default()).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn supersingular_elliptic_has_rank_zero() {
        let s = spec(&[2, 0, 1], 2);
        let lat = find_relation_lattice(&s, &Config::default());
        assert_eq!(lat.angle_rank, 0);
        assert_eq!(lat.relations, vec![(vec![2], -1)]);
        assert_eq!(lat.basis_saturated[0].e, vec![1]);
        assert_eq!(lat.basis_saturated[0].value, r(1, 2));
        assert_eq!(lat.status, LatticeStatus::Certified);
    }

    #[test]
    fn ordinary_elliptic_has_rank_one() {
        let s = spec(&[2, -1, 1], 2);
        let lat = find_relation_lattice(&s, &Config::default());
        assert_eq!(lat.angle_rank, 1);
        assert!(lat.relations.is_empty());
        assert!(lat.complete && lat.stable);
        assert_eq!(lat.status, LatticeStatus::Certified);
        // no rational with denominator ≤ 10^4 is within the enclosure
        assert!(simplest_rational(&s.angles().t[0], 10_000).is_none());
    }

    #[test]
    fn non_simple_sextic_relations() {
        let s = spec(&[8, 0, 10, 0, 5, 0, 1], 2);
        let lat = find_relation_lattice(&s, &Config::default());
        assert_eq!(lat.angle_rank, 1);
        // t(x²+x+2) = 1 - t(x²-x+2) and t(x²+2) = 1/2
        assert!(lat.contains(&[1, 0, 1]) || lat.contains(&[1, -1, 0]) || lat.contains(&[0, 1, 1]));
        let half = lat.basis_saturated.iter().any(|v| v.value.denom() == &Integer::from(2));
        assert!(half);
        assert_eq!(lat.status, LatticeStatus::Certified);
    }

    #[test]
    fn certify_examples() {
        let a = spec(&[2, 0, 1], 2).angles();
        assert_eq!(certify_relation(&a, &[2], &r(0, 1)).status, Status::Certified);
        assert_eq!(certify_relation(&a, &[1], &r(1, 2)).status, Status::Certified);
        let b = spec(&[2, -1, 1], 2).angles();
        assert_eq!(certify_relation(&b, &[1], &r(1, 2)).status, Status::Refuted);
        assert_eq!(certify_relation(&b, &[0], &r(0, 1)).status, Status::Certified);
    }

    #[test]
    fn separation_decides_eighth_root() {
        let s = spec(&[2, -2, 1], 2);
        let c = certify_relation_refining(&s, &[1], &r(1, 4));
        assert_eq!(c.status, Status::Certified);
        assert!(c.separation_margin > 0);
    }

    #[test]
    fn certified_relations_reverify_at_double_precision() {
        let s = spec(&[8, 0, 10, 0, 5, 0, 1], 2);
        let lat = find_relation_lattice(&s, &Config::default());
        let a = s.refine(2 * lat.params.precision_bits.max(512)).unwrap().angles();
        for v in &lat.basis_saturated {
            let c = certify_relation(&a, &v.e, &frac(&v.value));
            assert_ne!(c.status, Status::Refuted);
        }
    }

    #[test]
    fn lemma_form_examples() {
        let s = spec(&[2, -1, 1], 2);
        let f = WeilPolynomial::from_i64s(&[2, -1, 1], 2).unwrap();
        let v = simplicity(&f, &s, 2, &Config::default()).unwrap();
        let lat = AngleLattice::from_relations(3, &[(vec![3, 3, 3], -2)]);
        assert_eq!(
            check_lemma_form(&lat, &v).verdict,
            LemmaVerdict::Pass { n: 3, signs: vec![1, 1, 1] }
        );
        let lat = AngleLattice::from_relations(3, &[(vec![1, -1, 0], 0)]);
        assert!(matches!(
            check_lemma_form(&lat, &v).verdict,
            LemmaVerdict::Fail { ref witness, .. } if *witness == vec![1, -1, 0]
        ));
        let lat = AngleLattice::from_relations(3, &[]);
        assert_eq!(check_lemma_form(&lat, &v).verdict, LemmaVerdict::NotApplicable);
        let lat = AngleLattice::from_relations(3, &[(vec![1, -1, 1], 0)]);
        assert_eq!(
            check_lemma_form(&lat, &v).verdict,
            LemmaVerdict::Pass { n: 1, signs: vec![1, -1, 1] }
        );
    }

    #[test]
    fn galois_probe_examples() {
        assert!(galois_stability_probe(&AngleLattice::from_relations(3, &[(vec![2, 2, 2], -3)])));
        assert!(galois_stability_probe(&AngleLattice::from_relations(3, &[(vec![1, -1, 1], 0)])));
        assert!(!galois_stability_probe(&AngleLattice::from_relations(3, &[(vec![1, -1, 0], 0)])));
        assert!(galois_stability_probe(&AngleLattice::from_relations(3, &[])));
    }

    #[test]
    fn saturation_values_are_exact() {
        let lat = AngleLattice::from_relations(2, &[(vec![2, 0], -1), (vec![0, 3], -1)]);
        assert_eq!(lat.angle_rank, 0);
        assert_eq!(lat.value_of(&[1, 0]), Some(r(1, 2)));
        assert_eq!(lat.value_of(&[0, 1]), Some(r(1, 3)));
        assert_eq!(lat.value_of(&[1, 1]), Some(r(5, 6)));
    }

    #[test]
    fn simplest_rational_by_continued_fractions() {
        let x = Interval::from_rationals(128, &r(333, 1000), &r(334, 1000));
        assert_eq!(simplest_rational(&x, 100), Some(r(1, 3)));
        let x = Interval::from_rationals(128, &r(1, 7), &r(1, 7));
        assert_eq!(simplest_rational(&x, 6), None);
        assert_eq!(simplest_rational(&x, 7), Some(r(1, 7)));
    }

    #[test]
    fn ordinary_elliptic_is_upgraded_to_yes() {
        let f = WeilPolynomial::from_i64s(&[2, -1, 1], 2).unwrap();
        let s = spec(&[2, -1, 1], 2);
        let v = simplicity(&f, &s, 12, &Config::default()).unwrap();
        let lat = find_relation_lattice(&s, &Config::default());
        let up = upgrade_absolute_simplicity(&v, &lat);
        assert_eq!(up.absolutely_simple, AbsoluteSimplicity::Yes(12));
        let ss = spec(&[2, 0, 1], 2);
        let f = WeilPolynomial::from_i64s(&[2, 0, 1], 2).unwrap();
        let v = simplicity(&f, &ss, 12, &Config::default()).unwrap();
        let lat = find_relation_lattice(&ss, &Config::default());
        assert_eq!(upgrade_absolute_simplicity(&v, &lat).absolutely_simple, AbsoluteSimplicity::No(2));
    }
}
