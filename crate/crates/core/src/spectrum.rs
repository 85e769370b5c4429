//! Certified Frobenius eigenvalues.
//!
//! A Weil polynomial factors as `f(x) = x^g h(x + q/x)`, and every root `α`
//! of `f` lies on `|z| = √q` exactly when every root `u = α + ᾱ` of `h` is
//! real and lies in `[-2√q, 2√q]`. The trace roots are isolated exactly with
//! Sturm sequences on the square-free parts of `h`, then refined by
//! bisection on rational endpoints. Eigenvalues and angles are read off with
//! outward-rounded MPFR intervals:
//!
//! ```text
//! α = (u + i·sqrt(4q - u²)) / 2,    t = arccos(u / 2√q) / π.
//! ```
//!
//! Roots at `u = ±2√q` (the real eigenvalues `±√q`) are detected exactly and
//! carried with angle 0 or 1.

use std::cmp::Ordering;

use rug::{Integer, Rational};

use crate::arith::{ComplexInterval, Interval};
use crate::poly::{IntPoly, RootInterval};
use crate::weil::WeilPolynomial;
use crate::{Config, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Location {
    Isolated { factor: usize, iv: RootInterval },
    /// `u = +2√q` (`positive`) or `u = -2√q`.
    Boundary { positive: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct TraceRoot {
    loc: Location,
    multiplicity: usize,
}

/// Certified enclosures of the 2g Frobenius eigenvalues.
///
/// Entries `0..g` have angle in `[0, π]`, sorted by ascending angle; entry
/// `i + g` is the complex conjugate of entry `i`. Repeated roots appear as
/// repeated entries.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusSpectrum {
    q: Integer,
    g: usize,
    factors: Vec<IntPoly>,
    roots: Vec<TraceRoot>,
    precision_bits: u32,
    max_precision_bits: u32,
    working_prec: u32,
    enclosures: Vec<ComplexInterval>,
    multiplicities: Vec<usize>,
    root_ids: Vec<usize>,
    angle_root: Vec<usize>,
    angles: Vec<Interval>,
}

/// Normalized angles `t_i = arg(α_i)/π ∈ [0, 1]` for the upper-half-plane roots.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleVector {
    pub t: Vec<Interval>,
    pub precision_bits: u32,
    /// Field size of the source variety.
    pub q: Integer,
    /// Number of distinct trace roots behind the angles; bounds the degree
    /// of the field generated by the eigenvalues.
    pub distinct_roots: usize,
}

impl AngleVector {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Interval for `Σ e_i t_i`.
    pub fn combination(&self, e: &[i64]) -> Interval {
        assert_eq!(e.len(), self.t.len(), "exponent length");
        let prec = self.t.first().map_or(64, |x| x.prec());
        e.iter()
            .zip(&self.t)
            .filter(|(c, _)| **c != 0)
            .fold(Interval::from_i64(prec, 0), |acc, (c, t)| acc.add(&t.mul_int(*c)))
    }

    /// Upper bound on `log2` of the widest angle, `None` if all are exact.
    pub fn max_width_log2(&self) -> Option<i64> {
        self.t.iter().filter_map(|t| t.width_log2()).max()
    }

    /// Concatenation, used for the joint angles of a product.
    pub fn concat(&self, other: &AngleVector) -> AngleVector {
        AngleVector {
            t: self.t.iter().chain(other.t.iter()).cloned().collect(),
            precision_bits: self.precision_bits.min(other.precision_bits),
            q: self.q.clone(),
            distinct_roots: self.distinct_roots + other.distinct_roots,
        }
    }
}

fn two_sqrt_q_bound(q: &Integer) -> Option<Integer> {
    if q.is_perfect_square() {
        Some(Integer::from(q.sqrt_ref()) * 2u32)
    } else {
        None
    }
}

/// Exact position of a rational `u` relative to `[-2√q, 2√q]`:
/// `Less` strictly inside, `Equal` on the boundary, `Greater` outside.
fn cmp_to_boundary(u: &Rational, four_q: &Integer) -> std::cmp::Ordering {
    Rational::from(u.square_ref()).cmp(&Rational::from(four_q))
}

enum Placement {
    Inside,
    Outside,
    Unknown,
}

fn placement(iv: &RootInterval, four_q: &Integer) -> Placement {
    use std::cmp::Ordering::*;
    let lo = cmp_to_boundary(&iv.lo, four_q);
    let hi = cmp_to_boundary(&iv.hi, four_q);
    let lo_ok = iv.lo >= 0 || lo == Less;
    let hi_ok = iv.hi <= 0 || hi == Less;
    if lo_ok && hi_ok {
        return Placement::Inside;
    }
    if (iv.lo >= 0 && lo == Greater) || (iv.hi <= 0 && hi == Greater) {
        return Placement::Outside;
    }
    Placement::Unknown
}

type TraceData = (Vec<IntPoly>, Vec<TraceRoot>);

/// Isolate the roots of the trace polynomial and check they all lie in
/// `[-2√q, 2√q]`.
fn isolate_trace_roots(h: &IntPoly, q: &Integer) -> Result<TraceData> {
    let four_q = Integer::from(q * 4u32);
    let mut factors = Vec::new();
    let mut roots = Vec::new();
    for (s, mult) in h.square_free_decomposition() {
        let sturm = s.sturm_sequence();
        let real = IntPoly::count_real_roots(&sturm);
        if real != s.degree() {
            return Err(Error::RootModulusViolation(format!(
                "trace factor {} has {} non-real roots",
                s,
                s.degree() - real
            )));
        }
        let mut rest = s.clone();
        match two_sqrt_q_bound(q) {
            Some(b) => {
                for positive in [true, false] {
                    let lin = if positive {
                        IntPoly::new(vec![Integer::from(-&b), Integer::from(1)])
                    } else {
                        IntPoly::new(vec![b.clone(), Integer::from(1)])
                    };
                    if let Some(d) = rest.exact_div(&lin) {
                        rest = d;
                        roots.push(TraceRoot {
                            loc: Location::Boundary { positive },
                            multiplicity: mult,
                        });
                    }
                }
            }
            None => {
                let quad = IntPoly::new(vec![Integer::from(-&four_q), Integer::new(), Integer::from(1)]);
                if let Some(d) = rest.exact_div(&quad) {
                    rest = d;
                    for positive in [true, false] {
                        roots.push(TraceRoot {
                            loc: Location::Boundary { positive },
                            multiplicity: mult,
                        });
                    }
                }
            }
        }
        if rest.degree() == 0 {
            continue;
        }
        let idx = factors.len();
        for mut iv in rest.isolate_real_roots() {
            loop {
                match placement(&iv, &four_q) {
                    Placement::Inside => break,
                    Placement::Outside => {
                        return Err(Error::RootModulusViolation(format!(
                            "trace root near {:.6} lies outside [-2√q, 2√q]",
                            iv.lo.to_f64()
                        )))
                    }
                    Placement::Unknown => iv.bisect(&rest),
                }
            }
            roots.push(TraceRoot {
                loc: Location::Isolated { factor: idx, iv },
                multiplicity: mult,
            });
        }
        factors.push(rest);
    }
    separate_and_sort(&factors, &mut roots);
    Ok((factors, roots))
}

fn closed_overlap(a: &RootInterval, b: &RootInterval) -> bool {
    a.lo <= b.hi && b.lo <= a.hi
}

/// Refine until interior roots are pairwise disjoint, then sort by
/// descending `u` (ascending angle).
fn separate_and_sort(factors: &[IntPoly], roots: &mut [TraceRoot]) {
    loop {
        let mut changed = false;
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let (a, b) = roots.split_at_mut(j);
                let (ra, rb) = (&mut a[i], &mut b[0]);
                if let (
                    Location::Isolated { factor: fa, iv: ia },
                    Location::Isolated { factor: fb, iv: ib },
                ) = (&mut ra.loc, &mut rb.loc)
                {
                    if closed_overlap(ia, ib) {
                        ia.bisect(&factors[*fa]);
                        ib.bisect(&factors[*fb]);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let key = |r: &TraceRoot| -> (u8, Rational) {
        match &r.loc {
            Location::Boundary { positive: true } => (0, Rational::new()),
            Location::Isolated { iv, .. } => (1, Rational::from(-&iv.hi)),
            Location::Boundary { positive: false } => (2, Rational::new()),
        }
    };
    roots.sort_by_key(|a| key(a));
}

/// True if every root of `h` is real and lies in `[-2√q, 2√q]`.
pub fn trace_roots_in_range(h: &IntPoly, q: &Integer) -> bool {
    if h.degree() == 0 {
        return true;
    }
    let s = h.exact_div(&h.gcd(&h.derivative())).unwrap_or_else(|| h.clone());
    let sturm = s.sturm_sequence();
    let m = Integer::from(q * 4u32).sqrt();
    let count = |b: &Integer| {
        let lo = Rational::from(-b);
        IntPoly::count_roots(&sturm, &lo, &Rational::from(b)) + usize::from(s.sign_at(&lo) == Ordering::Equal)
    };
    let d = s.degree();
    if count(&Integer::from(&m + 1u32)) != d {
        return false;
    }
    // only roots between ⌊2√q⌋ and ⌊2√q⌋ + 1 need the full check
    count(&m) == d || isolate_trace_roots(h, q).is_ok()
}

/// Certified eigenvalue enclosures of `f` at `precision_bits`.
pub fn compute_spectrum(
    f: &WeilPolynomial,
    precision_bits: u32,
    config: &Config,
) -> Result<FrobeniusSpectrum> {
    let cap = config.max_precision_bits;
    if precision_bits > cap {
        return Err(Error::PrecisionExhausted {
            needed: precision_bits as u64,
            cap,
        });
    }
    let (factors, roots) = isolate_trace_roots(f.trace_polynomial(), f.q())?;
    let mut s = FrobeniusSpectrum {
        q: f.q().clone(),
        g: f.g(),
        factors,
        roots,
        precision_bits: 0,
        max_precision_bits: cap,
        working_prec: 64,
        enclosures: Vec::new(),
        multiplicities: Vec::new(),
        root_ids: Vec::new(),
        angle_root: Vec::new(),
        angles: Vec::new(),
    };
    s.materialize(precision_bits)?;
    Ok(s)
}

impl FrobeniusSpectrum {
    /// Refine every trace root and recompute enclosures so that angle widths
    /// are at most `2^-(bits/2)`.
    fn materialize(&mut self, bits: u32) -> Result<()> {
        let angle_target = -((bits / 2) as i64);
        let mut u_bits = bits.max(8);
        loop {
            for r in &mut self.roots {
                if let Location::Isolated { factor, iv } = &mut r.loc {
                    iv.refine_to(&self.factors[*factor], u_bits);
                }
            }
            let prec = u_bits + 64;
            self.working_prec = prec;
            self.build_enclosures(prec);
            let worst = self
                .angles
                .iter()
                .filter_map(|t| t.width_log2())
                .max()
                .unwrap_or(i64::MIN);
            let im_ok = self.enclosures[..self.g].iter().zip(&self.angle_root).all(|(e, &k)| {
                matches!(self.roots[k].loc, Location::Boundary { .. }) || e.im.is_positive()
            });
            if worst <= angle_target && im_ok {
                break;
            }
            u_bits = u_bits.saturating_add((bits / 2).max(8));
            if u_bits as u64 > 2 * self.max_precision_bits as u64 + 64 {
                return Err(Error::PrecisionExhausted {
                    needed: u_bits as u64,
                    cap: self.max_precision_bits,
                });
            }
        }
        self.precision_bits = bits;
        Ok(())
    }

    fn build_enclosures(&mut self, prec: u32) {
        let g = self.g;
        let four_q = Interval::point_int(prec, &Integer::from(&self.q * 4u32));
        let two_sqrt_q = four_q.sqrt();
        let sqrt_q = Interval::point_int(prec, &self.q).sqrt();
        let pi = Interval::pi(prec);
        let two = Interval::from_i64(prec, 2);
        let mut upper: Vec<(ComplexInterval, Interval, usize, usize, bool)> = Vec::new();
        for (k, r) in self.roots.iter().enumerate() {
            let (alpha, t, mult_f, real) = match &r.loc {
                Location::Boundary { positive } => {
                    let re = if *positive { sqrt_q.clone() } else { sqrt_q.neg() };
                    let t = Interval::from_i64(prec, if *positive { 0 } else { 1 });
                    (ComplexInterval::real(re), t, 2 * r.multiplicity, true)
                }
                Location::Isolated { iv, .. } => {
                    let u = Interval::from_rationals(prec, &iv.lo, &iv.hi);
                    let re = u.div(&two);
                    let im = four_q.sub(&u.square()).sqrt().div(&two);
                    let t = u.div(&two_sqrt_q).acos().div(&pi);
                    (ComplexInterval::new(re, im), t, r.multiplicity, false)
                }
            };
            for _ in 0..r.multiplicity {
                upper.push((alpha.clone(), t.clone(), mult_f, k, real));
            }
        }
        debug_assert_eq!(upper.len(), g);
        let mut enclosures = Vec::with_capacity(2 * g);
        let mut multiplicities = Vec::with_capacity(2 * g);
        let mut root_ids = Vec::with_capacity(2 * g);
        let mut angles = Vec::with_capacity(g);
        let mut angle_root = Vec::with_capacity(g);
        for (a, t, m, k, _) in &upper {
            enclosures.push(a.clone());
            multiplicities.push(*m);
            root_ids.push(2 * k);
            angles.push(t.clone());
            angle_root.push(*k);
        }
        for (a, _, m, k, real) in &upper {
            enclosures.push(a.conj());
            multiplicities.push(*m);
            root_ids.push(if *real { 2 * k } else { 2 * k + 1 });
        }
        self.enclosures = enclosures;
        self.multiplicities = multiplicities;
        self.root_ids = root_ids;
        self.angles = angles;
        self.angle_root = angle_root;
    }

    /// Same roots and indexing at a higher precision. Idempotent at or below
    /// the current precision.
    pub fn refine(&self, target_bits: u32) -> Result<FrobeniusSpectrum> {
        if target_bits <= self.precision_bits {
            return Ok(self.clone());
        }
        if target_bits > self.max_precision_bits {
            return Err(Error::PrecisionExhausted {
                needed: target_bits as u64,
                cap: self.max_precision_bits,
            });
        }
        let mut s = self.clone();
        s.materialize(target_bits)?;
        Ok(s)
    }

    pub fn q(&self) -> &Integer {
        &self.q
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn max_precision_bits(&self) -> u32 {
        self.max_precision_bits
    }

    /// MPFR precision of the stored intervals.
    pub fn working_prec(&self) -> u32 {
        self.working_prec
    }

    /// The 2g enclosures; entry `i + g` is the conjugate of entry `i`.
    pub fn enclosures(&self) -> &[ComplexInterval] {
        &self.enclosures
    }

    pub fn pairing(&self, i: usize) -> usize {
        (i + self.g) % (2 * self.g)
    }

    /// Multiplicity of entry `i` as a root of `f`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.multiplicities[i]
    }

    /// Entries with equal ids are the same complex number.
    pub fn root_id(&self, i: usize) -> usize {
        self.root_ids[i]
    }

    /// True if entry `i` is real (`±√q`).
    pub fn is_real(&self, i: usize) -> bool {
        let k = self.angle_root[i % self.g];
        matches!(self.roots[k].loc, Location::Boundary { .. })
    }

    pub fn angles(&self) -> AngleVector {
        AngleVector {
            t: self.angles.clone(),
            precision_bits: self.precision_bits,
            q: self.q.clone(),
            distinct_roots: self.roots.len(),
        }
    }

    /// Number of distinct roots of the trace polynomial.
    pub fn trace_root_count(&self) -> usize {
        self.roots.len()
    }

    /// Number of distinct complex eigenvalues.
    pub fn distinct_root_count(&self) -> usize {
        let mut ids = self.root_ids.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    /// Enclosure of the k-th distinct trace root `u_k = α_k + ᾱ_k`.
    pub fn trace_root_interval(&self, k: usize) -> Interval {
        let prec = self.working_prec;
        match &self.roots[k].loc {
            Location::Isolated { iv, .. } => Interval::from_rationals(prec, &iv.lo, &iv.hi),
            Location::Boundary { positive } => {
                let b = Interval::point_int(prec, &Integer::from(&self.q * 4u32)).sqrt();
                if *positive {
                    b
                } else {
                    b.neg()
                }
            }
        }
    }
}

/// Anything that can hand out certified angles at a requested precision.
pub trait AngleSource {
    fn angles_at(&self, bits: u32) -> Result<AngleVector>;
    /// Number of angles.
    fn dimension(&self) -> usize;
    /// Current precision.
    fn precision_bits(&self) -> u32;
    fn max_precision_bits(&self) -> u32;
}

impl AngleSource for FrobeniusSpectrum {
    fn angles_at(&self, bits: u32) -> Result<AngleVector> {
        Ok(self.refine(bits)?.angles())
    }
    fn dimension(&self) -> usize {
        self.g
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn max_precision_bits(&self) -> u32 {
        self.max_precision_bits
    }
}

/// Angles of `A` followed by the angle of a second variety (usually an
/// elliptic curve) over the same field.
#[derive(Clone, Debug)]
pub struct JointAngles<'a> {
    pub a: &'a FrobeniusSpectrum,
    pub b: &'a FrobeniusSpectrum,
}

impl AngleSource for JointAngles<'_> {
    fn angles_at(&self, bits: u32) -> Result<AngleVector> {
        Ok(self.a.angles_at(bits)?.concat(&self.b.angles_at(bits)?))
    }
    fn dimension(&self) -> usize {
        self.a.g + self.b.g
    }
    fn precision_bits(&self) -> u32 {
        self.a.precision_bits.min(self.b.precision_bits)
    }
    fn max_precision_bits(&self) -> u32 {
        self.a.max_precision_bits.min(self.b.max_precision_bits)
    }
}

/// A fixed angle vector; it cannot be refined past its own precision.
impl AngleSource for AngleVector {
    fn angles_at(&self, bits: u32) -> Result<AngleVector> {
        if bits <= self.precision_bits {
            Ok(self.clone())
        } else {
            Err(Error::PrecisionExhausted {
                needed: bits as u64,
                cap: self.precision_bits,
            })
        }
    }
    fn dimension(&self) -> usize {
        self.t.len()
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn max_precision_bits(&self) -> u32 {
        self.precision_bits
    }
}
