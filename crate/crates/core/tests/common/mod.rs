#![allow(dead_code)]

use angle_rank::poly::IntPoly;
use angle_rank::relations::{direct_rationality, AngleLattice, Status};
use angle_rank::spectrum::{AngleVector, FrobeniusSpectrum};
use angle_rank::tate::{is_tate, VarietySpec};
use angle_rank::weil::{enumerate_weil_polynomials, weil_from_trace, WeilPolynomial};
use rug::Integer;
use std::cell::OnceCell;
use std::collections::HashMap;

/// Every isogeny class of dimension 1, 2 and 3 over `F_2`.
pub fn generated_corpus() -> Vec<WeilPolynomial> {
    (1..=3).flat_map(|g| enumerate_weil_polynomials(g, 2)).collect()
}

/// `h(y) = Π (y − k) + 1` over `F_101`: seven distinct real trace roots.
pub fn genus_seven() -> WeilPolynomial {
    let mut h = IntPoly::one();
    for k in [-18, -12, -6, 0, 6, 12, 18] {
        h = h.mul(&IntPoly::from_i64s(&[-k, 1]));
    }
    h = h.add(&IntPoly::one());
    weil_from_trace(&h, &Integer::from(101), 7)
}

/// Angle vectors at increasing precision, refined on first use.
pub struct Levels<'a> {
    s: &'a FrobeniusSpectrum,
    e: Option<&'a FrobeniusSpectrum>,
    cache: [OnceCell<AngleVector>; 4],
}

impl<'a> Levels<'a> {
    pub fn new(s: &'a FrobeniusSpectrum, e: Option<&'a FrobeniusSpectrum>) -> Self {
        Levels { s, e, cache: Default::default() }
    }

    fn get(&self, i: usize) -> &AngleVector {
        self.cache[i].get_or_init(|| {
            let b = 512u32 << (2 * i as u32);
            let a = self.s.refine(b).expect("refines").angles();
            match self.e {
                Some(e) => a.concat(&e.refine(b).expect("refines").angles()),
                None => a,
            }
        })
    }
}

/// Direct rationality test on one folded vector, refining the angles until
/// the certificate is decisive.
pub fn oracle(levels: &Levels, v: &[i64], max_den: u64) -> Option<bool> {
    for i in 0..4 {
        match direct_rationality(levels.get(i), v, max_den) {
            Status::Certified => return Some(true),
            Status::Refuted => return Some(false),
            Status::Heuristic => {}
        }
    }
    None
}

pub struct OracleTally {
    pub profiles: usize,
    pub mismatches: usize,
    pub undecided: usize,
}

/// Compare `is_tate` with the oracle on every profile of every degree.
pub fn compare_with_oracle(x: &VarietySpec, lat: &AngleLattice, levels: &Levels, max_den: u64) -> OracleTally {
    let mut t = OracleTally { profiles: 0, mismatches: 0, undecided: 0 };
    let mut memo: HashMap<Vec<i64>, Option<bool>> = HashMap::new();
    for p in x.profiles() {
        t.profiles += 1;
        let direct = if p.degree() % 2 == 1 {
            Some(false)
        } else {
            let v = x.folded(&p);
            *memo.entry(v).or_insert_with_key(|v| oracle(levels, v, max_den))
        };
        match direct {
            Some(b) if b == is_tate(x, &p, lat) => {}
            Some(_) => t.mismatches += 1,
            None => t.undecided += 1,
        }
    }
    t
}

/// An almost-ordinary threefold times four elliptic curves over `F_2`:
/// `g = 7` with a rank-4 relation lattice.
pub fn genus_seven_product() -> WeilPolynomial {
    let mut f = WeilPolynomial::from_i64s(&[8, 8, 2, 0, 1, 2, 1], 2).unwrap();
    for c in [[2, -1, 1], [2, 1, 1], [2, 0, 1], [2, -2, 1]] {
        f = f.product(&WeilPolynomial::from_i64s(&c, 2).unwrap()).unwrap();
    }
    f
}
