//! Tate, Lefschetz and exotic class dimensions of `A×A`, `A×E` and `A`.
//!
//! A basis of `H^{2n}` is indexed by profiles: how many copies `c_s` of each
//! eigenvalue slot `s` enter the wedge product. A profile is Tate when its
//! folded exponent vector lies in the saturated relation lattice Λ, and
//! Lefschetz when it splits into degree-2 Tate profiles. Tate profiles are
//! found by matching lattice residues between two halves of the slot list;
//! Lefschetz decomposability is then filled in by increasing profile code.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::relations::{find_relation_lattice, AngleLattice};
use crate::spectrum::{FrobeniusSpectrum, JointAngles};
use crate::weil::NewtonClass;
use crate::{Config, Error, Result};

/// Largest profile space enumerated.
pub const MAX_PROFILES: u128 = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyKind {
    SelfProduct,
    ProductWithE { e_trace: i64, e_class: NewtonClass },
    Single,
}

impl VarietyKind {
    pub fn table_name(&self) -> &'static str {
        match self {
            VarietyKind::SelfProduct => "AxA",
            VarietyKind::ProductWithE { e_class: NewtonClass::Supersingular, .. } => "AxE_ss",
            VarietyKind::ProductWithE { .. } => "AxE_ord",
            VarietyKind::Single => "A",
        }
    }
}

/// One eigenvalue of `H¹(X)` with its multiplicity; `conj` slots carry the
/// exponent `-1` on their lattice coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub coord: usize,
    pub conj: bool,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    pub kind: VarietyKind,
    pub g: usize,
    pub slots: Vec<Slot>,
    /// Dimension of the relation lattice the folded vectors live in.
    pub lattice_dim: usize,
}

fn push_slots(slots: &mut Vec<Slot>, s: &FrobeniusSpectrum, offset: usize, factor: usize) {
    let g = s.g();
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for i in 0..2 * g {
        let id = s.root_id(i);
        if let Some(&(_, k)) = seen.iter().find(|(x, _)| *x == id) {
            slots[k].multiplicity += factor;
        } else {
            seen.push((id, slots.len()));
            slots.push(Slot {
                coord: offset + i % g,
                conj: i >= g,
                multiplicity: factor,
            });
        }
    }
}

impl VarietySpec {
    pub fn self_product(a: &FrobeniusSpectrum) -> VarietySpec {
        let mut slots = Vec::new();
        push_slots(&mut slots, a, 0, 2);
        VarietySpec {
            kind: VarietyKind::SelfProduct,
            g: a.g(),
            slots,
            lattice_dim: a.g(),
        }
    }

    pub fn single(a: &FrobeniusSpectrum) -> VarietySpec {
        let mut slots = Vec::new();
        push_slots(&mut slots, a, 0, 1);
        VarietySpec {
            kind: VarietyKind::Single,
            g: a.g(),
            slots,
            lattice_dim: a.g(),
        }
    }

    /// `A×E` for an elliptic curve with Frobenius trace `e_trace`.
    pub fn product_with_e(
        a: &FrobeniusSpectrum,
        e: &FrobeniusSpectrum,
        e_trace: i64,
        e_class: NewtonClass,
    ) -> VarietySpec {
        assert_eq!(e.g(), 1, "E must be an elliptic curve");
        let mut slots = Vec::new();
        push_slots(&mut slots, a, 0, 1);
        push_slots(&mut slots, e, a.g(), 1);
        VarietySpec {
            kind: VarietyKind::ProductWithE { e_trace, e_class },
            g: a.g(),
            slots,
            lattice_dim: a.g() + 1,
        }
    }

    /// `dim X`.
    pub fn dim(&self) -> usize {
        self.slots.iter().map(|s| s.multiplicity).sum::<usize>() / 2
    }

    pub fn middle_degree(&self) -> usize {
        self.dim()
    }

    pub fn profile_count(&self) -> u128 {
        self.slots.iter().map(|s| s.multiplicity as u128 + 1).product()
    }

    fn slot_vector(&self, s: &Slot) -> Vec<i64> {
        let mut v = vec![0; self.lattice_dim];
        v[s.coord] = if s.conj { -1 } else { 1 };
        v
    }

    /// `Σ c_s · (±e_coord(s))`.
    pub fn folded(&self, p: &Profile) -> Vec<i64> {
        assert_eq!(p.counts.len(), self.slots.len(), "profile length");
        let mut v = vec![0; self.lattice_dim];
        for (s, &c) in self.slots.iter().zip(&p.counts) {
            v[s.coord] += if s.conj { -(c as i64) } else { c as i64 };
        }
        v
    }

    /// `∏ C(mult(s), c_s)`.
    pub fn weight(&self, p: &Profile) -> u64 {
        self.slots
            .iter()
            .zip(&p.counts)
            .map(|(s, &c)| binomial(s.multiplicity as u64, c as u64))
            .product()
    }

    /// All profiles in lexicographic order of the count vector.
    pub fn profiles(&self) -> Vec<Profile> {
        let mut out = vec![Profile { counts: Vec::new() }];
        for s in &self.slots {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=s.multiplicity as u8).map(move |c| {
                        let mut q = p.clone();
                        q.counts.push(c);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// Copies of each slot in a wedge monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    pub counts: Vec<u8>,
}

impl Profile {
    pub fn degree(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// `c ↦ mult − c`, the Poincaré dual profile.
    pub fn complement(&self, x: &VarietySpec) -> Profile {
        Profile {
            counts: x
                .slots
                .iter()
                .zip(&self.counts)
                .map(|(s, &c)| s.multiplicity as u8 - c)
                .collect(),
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// True iff the monomial of `p` is `q^n` times a root of unity.
pub fn is_tate(x: &VarietySpec, p: &Profile, lat: &AngleLattice) -> bool {
    p.degree().is_multiple_of(2) && lat.contains(&x.folded(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub tate: u64,
    pub lefschetz: u64,
    pub exotic: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryCheck {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExoticReport {
    pub table: String,
    pub dim: usize,
    pub middle_degree: usize,
    /// Even degrees `0, 2, …, 2·dim`.
    pub rows: Vec<DegreeRow>,
    pub corollary_checks: Vec<CorollaryCheck>,
    pub certified: bool,
}

impl ExoticReport {
    pub fn row(&self, degree: usize) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| r.degree == degree)
    }

    pub fn total_exotic(&self) -> u64 {
        self.rows.iter().map(|r| r.exotic).sum()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CorollaryCheck> {
        self.corollary_checks.iter().filter(|c| !c.pass)
    }
}

struct Half {
    radix: Vec<u64>,
    residues: Vec<Vec<i64>>,
    weights: Vec<u64>,
    degrees: Vec<u32>,
}

fn enumerate_half(slots: &[Slot], w: &[Vec<i64>]) -> Half {
    let r = w.first().map_or(0, |x| x.len());
    let mut radix = Vec::with_capacity(slots.len());
    let mut total = 1u64;
    for s in slots {
        radix.push(total);
        total *= s.multiplicity as u64 + 1;
    }
    let mut residues = Vec::with_capacity(total as usize);
    let mut weights = Vec::with_capacity(total as usize);
    let mut degrees = Vec::with_capacity(total as usize);
    for code in 0..total {
        let mut res = vec![0i64; r];
        let mut wt = 1u64;
        let mut deg = 0u32;
        for (k, s) in slots.iter().enumerate() {
            let c = (code / radix[k]) % (s.multiplicity as u64 + 1);
            if c > 0 {
                for (x, y) in res.iter_mut().zip(&w[k]) {
                    *x += c as i64 * y;
                }
                wt *= binomial(s.multiplicity as u64, c);
                deg += c as u32;
            }
        }
        residues.push(res);
        weights.push(wt);
        degrees.push(deg);
    }
    Half {
        radix,
        residues,
        weights,
        degrees,
    }
}

/// Per-degree Tate and Lefschetz dimensions for every even degree.
pub fn dimension_table(x: &VarietySpec, lat: &AngleLattice) -> Result<Vec<DegreeRow>> {
    if lat.dim != x.lattice_dim {
        return Err(Error::DimensionMismatch(format!(
            "lattice has dimension {}, variety needs {}",
            lat.dim, x.lattice_dim
        )));
    }
    let total = x.profile_count();
    if total > MAX_PROFILES {
        return Err(Error::EnumerationTooLarge(total));
    }
    let k = x.slots.len();
    // residue of each slot under the complement matrix
    let w: Vec<Vec<i64>> = x
        .slots
        .iter()
        .map(|s| {
            let v = x.slot_vector(s);
            lat.complement
                .iter()
                .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let split = k.div_ceil(2);
    let lo = enumerate_half(&x.slots[..split], &w[..split]);
    let hi = enumerate_half(&x.slots[split..], &w[split..]);
    let lo_size = lo.residues.len() as u64;
    let mut by_residue: HashMap<&[i64], Vec<u64>> = HashMap::new();
    for (code, res) in lo.residues.iter().enumerate() {
        by_residue.entry(res.as_slice()).or_default().push(code as u64);
    }
    let tate_codes: Vec<u64> = (0..hi.residues.len())
        .into_par_iter()
        .flat_map_iter(|h| {
            let neg: Vec<i64> = hi.residues[h].iter().map(|x| -x).collect();
            let base = h as u64 * lo_size;
            by_residue
                .get(neg.as_slice())
                .into_iter()
                .flat_map(move |v| v.iter().map(move |l| base + l))
        })
        .collect();

    // radix of every slot in the full code
    let mut radix: Vec<u64> = lo.radix.clone();
    radix.extend(hi.radix.iter().map(|r| r * lo_size));
    let mults: Vec<u64> = x.slots.iter().map(|s| s.multiplicity as u64 + 1).collect();
    let pair_tate: Vec<Vec<bool>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| w[a].iter().zip(&w[b]).all(|(x, y)| x + y == 0))
                .collect()
        })
        .collect();
    let mut lefschetz = vec![0u64; (total as usize).div_ceil(64)];
    let get = |bits: &[u64], c: u64| bits[(c / 64) as usize] >> (c % 64) & 1 == 1;
    let mut digits = vec![0u64; k];
    for &code in &tate_codes {
        if code == 0 {
            lefschetz[0] |= 1;
            continue;
        }
        for s in 0..k {
            digits[s] = (code / radix[s]) % mults[s];
        }
        let first = digits.iter().position(|&c| c > 0).expect("nonzero code");
        let decomposes = (first..k).any(|t| {
            let need = if t == first { 2 } else { 1 };
            digits[t] >= need && pair_tate[first][t] && get(&lefschetz, code - radix[first] - radix[t])
        });
        if decomposes {
            lefschetz[(code / 64) as usize] |= 1 << (code % 64);
        }
    }

    let top = 2 * x.dim();
    let (tate, lef) = tate_codes
        .par_iter()
        .fold(
            || (vec![0u64; top + 1], vec![0u64; top + 1]),
            |(mut t, mut l), &code| {
                let (h, lo_code) = ((code / lo_size) as usize, (code % lo_size) as usize);
                let deg = (lo.degrees[lo_code] + hi.degrees[h]) as usize;
                if deg.is_multiple_of(2) {
                    let wt = lo.weights[lo_code] * hi.weights[h];
                    t[deg] += wt;
                    if get(&lefschetz, code) {
                        l[deg] += wt;
                    }
                }
                (t, l)
            },
        )
        .reduce(
            || (vec![0u64; top + 1], vec![0u64; top + 1]),
            |(mut a, mut b), (c, d)| {
                for i in 0..=top {
                    a[i] += c[i];
                    b[i] += d[i];
                }
                (a, b)
            },
        );
    Ok((0..=top)
        .step_by(2)
        .map(|d| DegreeRow {
            degree: d,
            tate: tate[d],
            lefschetz: lef[d],
            exotic: tate[d] - lef[d],
        })
        .collect())
}

pub fn tate_dimension(x: &VarietySpec, degree: usize, lat: &AngleLattice) -> Result<u64> {
    let rows = dimension_table(x, lat)?;
    Ok(rows.iter().find(|r| r.degree == degree).map_or(0, |r| r.tate))
}

pub fn lefschetz_dimension(x: &VarietySpec, degree: usize, lat: &AngleLattice) -> Result<u64> {
    let rows = dimension_table(x, lat)?;
    Ok(rows.iter().find(|r| r.degree == degree).map_or(0, |r| r.lefschetz))
}

/// What the corollary checks need to know about `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryContext {
    pub g: usize,
    pub angle_rank: usize,
    /// Absolute simplicity is at least heuristically established.
    pub simple: bool,
}

impl CorollaryContext {
    /// Simple, odd `g > 1`, angle rank `g − 1` or `g`.
    pub fn qualifies_odd(&self) -> bool {
        self.simple && self.g % 2 == 1 && self.g > 1 && self.angle_rank + 1 >= self.g
    }
}

fn check(id: &str, pass: bool, detail: String) -> CorollaryCheck {
    CorollaryCheck {
        id: id.to_string(),
        pass,
        detail,
    }
}

fn corollary_checks(x: &VarietySpec, rows: &[DegreeRow], ctx: &CorollaryContext) -> Vec<CorollaryCheck> {
    let mid = x.middle_degree();
    let middle = rows.iter().find(|r| r.degree == mid).map_or(0, |r| r.exotic);
    let outside: u64 = rows.iter().filter(|r| r.degree != mid).map(|r| r.exotic).sum();
    let total = middle + outside;
    let g = ctx.g;
    let full = ctx.angle_rank == g;
    let mut out = Vec::new();
    if ctx.qualifies_odd() {
        let c1 = || check("C1", outside == 0, format!("exotic outside degree {mid}: {outside}"));
        match &x.kind {
            VarietyKind::SelfProduct => {
                out.push(c1());
                out.push(check("C2", middle == 0 || middle == 2, format!("middle exotic {middle}")));
                if full {
                    out.push(check("C5", total == 0, format!("exotic total {total}")));
                }
            }
            VarietyKind::ProductWithE { e_class, .. } => {
                out.push(c1());
                if *e_class == NewtonClass::Supersingular {
                    out.push(check("C3", middle == 0 || middle == 4, format!("middle exotic {middle}")));
                    if full {
                        out.push(check("C5", total == 0, format!("exotic total {total}")));
                    }
                } else if full {
                    out.push(check(
                        "C5",
                        outside == 0 && (middle == 0 || middle == 2),
                        format!("middle exotic {middle}, outside {outside}"),
                    ));
                } else {
                    out.push(check("C4", total == 0, format!("exotic total {total}")));
                }
            }
            VarietyKind::Single => {}
        }
    }
    if x.kind == VarietyKind::Single && ctx.simple && g.is_multiple_of(2) && ctx.angle_rank + 1 == g {
        out.push(check(
            "C6",
            outside == 0 && (middle == 0 || middle == 2),
            format!("middle exotic {middle}, outside {outside}"),
        ));
    }
    out
}

/// Full table plus the corollary checks that apply under `ctx`.
pub fn exotic_report(
    x: &VarietySpec,
    lat: &AngleLattice,
    ctx: Option<&CorollaryContext>,
) -> Result<ExoticReport> {
    let rows = dimension_table(x, lat)?;
    let corollary_checks = ctx.map_or_else(Vec::new, |c| corollary_checks(x, &rows, c));
    Ok(ExoticReport {
        table: x.kind.table_name().to_string(),
        dim: x.dim(),
        middle_degree: x.middle_degree(),
        rows,
        corollary_checks,
        certified: lat.is_certified(),
    })
}

/// Relation lattice of the `g + 1` angles of `A×E`.
pub fn joint_lattice(a: &FrobeniusSpectrum, e: &FrobeniusSpectrum, config: &Config) -> AngleLattice {
    find_relation_lattice(&JointAngles { a, b: e }, config)
}
