//! Weil q-polynomials: validation, Newton polygons, base extension and the
//! (absolute) simplicity tests.

use std::fmt;

use rug::{Integer, Rational};

use rug::ops::Pow;

use crate::arith::Interval;
use crate::poly::{small_primes, IntPoly, ModPoly};
use crate::spectrum::{compute_spectrum, FrobeniusSpectrum};
use crate::{Config, Error, Result};

/// Characteristic polynomial of Frobenius of a g-dimensional abelian variety
/// over F_q, validated against the functional equation.
#[derive(Clone, PartialEq, Eq)]
pub struct WeilPolynomial {
    poly: IntPoly,
    q: Integer,
    p: u64,
    r: u32,
    g: usize,
    trace: IntPoly,
}

impl fmt::Debug for WeilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeilPolynomial({}, q={})", self.poly, self.q)
    }
}

impl fmt::Display for WeilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{}", self.poly, self.q)
    }
}

/// Recover `(p, r)` with `q = p^r`, `p` prime.
pub fn prime_power(q: &Integer) -> Option<(u64, u32)> {
    if *q < 2 {
        return None;
    }
    let bits = q.significant_bits();
    for r in (1..=bits).rev() {
        let base = Integer::from(q.root_ref(r));
        if base < 2 {
            continue;
        }
        if Integer::from((&base).pow(r)) == *q
            && base.is_probably_prime(30) != rug::integer::IsPrime::No
        {
            return base.to_u64().map(|p| (p, r));
        }
    }
    None
}

/// Validate an ascending coefficient list as a Weil q-polynomial.
pub fn parse_weil(coeffs: &[Integer], q: &Integer) -> Result<WeilPolynomial> {
    if coeffs.is_empty() {
        return Err(Error::Empty);
    }
    let lead = coeffs.last().unwrap();
    if *lead != 1 {
        return Err(Error::NotMonic(lead.to_string()));
    }
    let deg = coeffs.len() - 1;
    if deg == 0 || deg % 2 == 1 {
        return Err(Error::OddDegree(deg));
    }
    let (p, r) = prime_power(q).ok_or_else(|| Error::NotPrimePower(q.to_string()))?;
    let g = deg / 2;
    for i in 0..g {
        let rhs = Integer::from(q.pow((g - i) as u32)) * &coeffs[2 * g - i];
        if coeffs[i] != rhs {
            return Err(Error::FunctionalEquationViolation { index: i });
        }
    }
    let poly = IntPoly::new(coeffs.to_vec());
    let trace = trace_polynomial(&poly, q, g);
    Ok(WeilPolynomial {
        poly,
        q: q.clone(),
        p,
        r,
        g,
        trace,
    })
}

/// The real polynomial `h` with `f(x) = x^g h(x + q/x)`.
fn trace_polynomial(f: &IntPoly, q: &Integer, g: usize) -> IntPoly {
    let mut h = vec![Integer::new(); g + 1];
    for k in (0..=g).rev() {
        let mut v = f.coeff(g + k);
        let mut k2 = k + 2;
        while k2 <= g {
            let j = ((k2 - k) / 2) as u32;
            let binom = Integer::from(Integer::binomial_u(k2 as u32, j));
            v -= (&h[k2] * binom) * Integer::from(q.pow(j));
            k2 += 2;
        }
        h[k] = v;
    }
    IntPoly::new(h)
}

impl WeilPolynomial {
    pub fn from_i64s(coeffs: &[i64], q: u64) -> Result<Self> {
        let c: Vec<Integer> = coeffs.iter().map(|&x| Integer::from(x)).collect();
        parse_weil(&c, &Integer::from(q))
    }

    /// Product of two Weil polynomials over the same field.
    pub fn product(&self, other: &WeilPolynomial) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::DimensionMismatch(format!(
                "q = {} vs q = {}",
                self.q, other.q
            )));
        }
        parse_weil(self.poly.mul(&other.poly).coeffs(), &self.q)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn coeffs(&self) -> &[Integer] {
        self.poly.coeffs()
    }

    pub fn q(&self) -> &Integer {
        &self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `h` with `f(x) = x^g h(x + q/x)`; its roots are `alpha + q/alpha`.
    pub fn trace_polynomial(&self) -> &IntPoly {
        &self.trace
    }

    /// Ascending coefficients as `i64`, when they fit.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.poly.to_i64s()
    }

    /// The pair `(coeffs, q)` accepted back by [`parse_weil`].
    pub fn serialize(&self) -> (Vec<Integer>, Integer) {
        (self.poly.coeffs().to_vec(), self.q.clone())
    }
}

// -- Newton polygon -- //

/// Slopes of the Newton polygon with multiplicities, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub slopes: Vec<(Rational, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NewtonClass {
    Ordinary,
    AlmostOrdinary,
    Supersingular,
    Other,
}

impl NewtonClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            NewtonClass::Ordinary => "ordinary",
            NewtonClass::AlmostOrdinary => "almost-ordinary",
            NewtonClass::Supersingular => "supersingular",
            NewtonClass::Other => "other",
        }
    }
}

impl NewtonPolygon {
    pub fn total_multiplicity(&self) -> usize {
        self.slopes.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity_of(&self, slope: &Rational) -> usize {
        self.slopes
            .iter()
            .filter(|(s, _)| s == slope)
            .map(|(_, m)| *m)
            .sum()
    }

    /// Slope `λ` and `1 - λ` occur equally often.
    pub fn is_symmetric(&self) -> bool {
        self.slopes
            .iter()
            .all(|(s, m)| self.multiplicity_of(&Rational::from(1 - s)) == *m)
    }

    /// Multiset union, as for the polygon of a product.
    pub fn union(&self, other: &NewtonPolygon) -> NewtonPolygon {
        let mut all: Vec<(Rational, usize)> = Vec::new();
        for (s, m) in self.slopes.iter().chain(other.slopes.iter()) {
            match all.iter_mut().find(|(t, _)| t == s) {
                Some(e) => e.1 += m,
                None => all.push((s.clone(), *m)),
            }
        }
        all.sort_by(|a, b| a.0.cmp(&b.0));
        NewtonPolygon { slopes: all }
    }
}

fn valuation(x: &Integer, p: u64) -> u32 {
    let (_, v) = Integer::from(x).remove_factor(&Integer::from(p));
    v
}

/// Root valuations normalized by `v(q) = 1`, read off the lower convex hull
/// of `(i, v_p(a_i)/r)`.
pub fn newton_polygon(f: &WeilPolynomial) -> NewtonPolygon {
    let r = f.r;
    let pts: Vec<(i64, Rational)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != 0)
        .map(|(i, a)| (i as i64, Rational::from((valuation(a, f.p), r))))
        .collect();
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let lhs = Rational::from(y2 - y1) * (pt.0 - x1);
            let rhs = Rational::from(&pt.1 - y1) * (x2 - x1);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes: Vec<(Rational, usize)> = hull
        .windows(2)
        .map(|w| {
            let dx = w[1].0 - w[0].0;
            let s = Rational::from(&w[0].1 - &w[1].1) / dx;
            (s, dx as usize)
        })
        .collect();
    slopes.sort_by(|a, b| a.0.cmp(&b.0));
    NewtonPolygon { slopes }
}

pub fn classify_newton(np: &NewtonPolygon, g: usize) -> NewtonClass {
    let zero = Rational::new();
    let half = Rational::from((1, 2));
    let one = Rational::from(1);
    let pattern = |a: usize, b: usize, c: usize| {
        np.multiplicity_of(&zero) == a
            && np.multiplicity_of(&half) == b
            && np.multiplicity_of(&one) == c
            && np.total_multiplicity() == 2 * g
    };
    if pattern(g, 0, g) {
        NewtonClass::Ordinary
    } else if pattern(0, 2 * g, 0) {
        NewtonClass::Supersingular
    } else if g >= 1 && pattern(g - 1, 2, g - 1) {
        NewtonClass::AlmostOrdinary
    } else {
        NewtonClass::Other
    }
}

// -- base extension -- //

/// The Weil polynomial over F_{q^m} whose roots are the m-th powers of the roots of `f`.
pub fn base_extend(f: &WeilPolynomial, m: u32) -> WeilPolynomial {
    assert!(m >= 1, "base extension degree must be positive");
    if m == 1 {
        return f.clone();
    }
    let n = 2 * f.g;
    // e_k = (-1)^k a_{n-k}
    let e: Vec<Integer> = (0..=n)
        .map(|k| {
            let a = f.poly.coeff(n - k);
            if k % 2 == 1 {
                -a
            } else {
                a
            }
        })
        .collect();
    let top = n * m as usize;
    let mut ps = vec![Integer::new(); top + 1];
    for k in 1..=top {
        let mut s = Integer::new();
        for i in 1..=k.min(n) {
            let term = if i == k {
                Integer::from(&e[i] * k as u64)
            } else {
                Integer::from(&e[i] * &ps[k - i])
            };
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        ps[k] = s;
    }
    let big: Vec<Integer> = (0..=n).map(|j| ps[j * m as usize].clone()).collect();
    let mut ee = vec![Integer::new(); n + 1];
    ee[0] = Integer::from(1);
    for k in 1..=n {
        let mut s = Integer::new();
        for i in 1..=k {
            let term = Integer::from(&ee[k - i] * &big[i]);
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        ee[k] = s.div_exact(&Integer::from(k));
    }
    let coeffs: Vec<Integer> = (0..=n)
        .map(|i| {
            let k = n - i;
            if k % 2 == 1 {
                Integer::from(-&ee[k])
            } else {
                ee[k].clone()
            }
        })
        .collect();
    let q = Integer::from((&f.q).pow(m));
    let poly = IntPoly::new(coeffs);
    let trace = trace_polynomial(&poly, &q, f.g);
    WeilPolynomial {
        poly,
        q,
        p: f.p,
        r: f.r * m,
        g: f.g,
        trace,
    }
}

// -- simplicity -- //

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    /// `f` is irreducible modulo this prime (and square-free there).
    ModPrime(u64),
    /// No sub-product of conjugate root pairs has integer coefficients.
    SubsetExhaustion,
    /// A nontrivial monic factor.
    Factor(IntPoly),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbsoluteSimplicity {
    /// Every base extension polynomial is irreducible (proved).
    Yes(u32),
    /// `f_m` irreducible for all `m` up to the recorded bound.
    HeuristicYes(u32),
    /// `f_m` is reducible for this `m` (`m = 1` when `f` itself is). For an
    /// elliptic curve this only says that Frobenius becomes rational.
    No(u32),
}

impl AbsoluteSimplicity {
    pub fn is_simple(&self) -> bool {
        !matches!(self, AbsoluteSimplicity::No(_))
    }

    pub fn m(&self) -> u32 {
        match *self {
            AbsoluteSimplicity::Yes(m)
            | AbsoluteSimplicity::HeuristicYes(m)
            | AbsoluteSimplicity::No(m) => m,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            AbsoluteSimplicity::Yes(_) => "yes",
            AbsoluteSimplicity::HeuristicYes(_) => "heuristic-yes",
            AbsoluteSimplicity::No(_) => "no",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub irreducible: bool,
    pub certificate: IrreducibilityCertificate,
    pub absolutely_simple: AbsoluteSimplicity,
}

fn factor_rank(p: &IntPoly) -> (usize, Integer, Vec<Integer>) {
    let l1 = p
        .coeffs()
        .iter()
        .fold(Integer::new(), |acc, c| acc + Integer::from(c.abs_ref()));
    (p.degree(), l1, p.coeffs().to_vec())
}

/// Decide irreducibility of a Weil polynomial over Q.
///
/// A repeated root yields the gcd with the derivative as witness. Otherwise
/// a mod-l certificate is tried for primes below 100, then every product of
/// conjugate root pairs of degree at most g is formed from the enclosures,
/// rounded, and confirmed by exact division. The witness reported for a
/// reducible input is the simplest factor found (degree, then l1 norm).
pub fn irreducibility(
    f: &WeilPolynomial,
    spectrum: Option<&FrobeniusSpectrum>,
    config: &Config,
) -> Result<IrreducibilityCertificate> {
    let g = f.poly.gcd(&f.poly.derivative());
    if g.degree() > 0 {
        return Ok(IrreducibilityCertificate::Factor(g));
    }
    for l in small_primes(100) {
        let fl = ModPoly::reduce(&f.poly, l);
        if fl.degree() == f.poly.degree() && fl.is_squarefree() && fl.is_irreducible() {
            return Ok(IrreducibilityCertificate::ModPrime(l));
        }
    }
    let owned;
    let mut spec = match spectrum {
        Some(s) => s.clone(),
        None => {
            owned = compute_spectrum(f, config.precision_bits, config)?;
            owned
        }
    };
    let roots = spec.trace_root_count();
    let mut best: Option<IntPoly> = None;
    'sizes: for size in 1..=roots / 2 {
        for subset in subsets_of_size(roots, size) {
            loop {
                match candidate_factor(&spec, &subset) {
                    Candidate::None => break,
                    Candidate::Poly(c) => {
                        if f.poly.exact_div(&c).is_some() {
                            let better = match &best {
                                Some(b) => factor_rank(&c) < factor_rank(b),
                                None => true,
                            };
                            if better {
                                best = Some(c);
                            }
                        }
                        break;
                    }
                    Candidate::Ambiguous => {
                        let next = spec.precision_bits().saturating_mul(2);
                        spec = spec.refine(next)?;
                    }
                }
            }
        }
        if best.is_some() {
            break 'sizes;
        }
    }
    Ok(match best {
        Some(c) => IrreducibilityCertificate::Factor(c),
        None => IrreducibilityCertificate::SubsetExhaustion,
    })
}

enum Candidate {
    None,
    Poly(IntPoly),
    Ambiguous,
}

fn candidate_factor(spec: &FrobeniusSpectrum, subset: &[usize]) -> Candidate {
    let prec = spec.working_prec();
    let q = Interval::point_int(prec, spec.q());
    // prod (x^2 - u x + q) in interval arithmetic
    let mut acc: Vec<Interval> = vec![Interval::from_i64(prec, 1)];
    for &k in subset {
        let u = spec.trace_root_interval(k);
        let quad = [q.clone(), u.neg(), Interval::from_i64(prec, 1)];
        let mut next = vec![Interval::from_i64(prec, 0); acc.len() + 2];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in quad.iter().enumerate() {
                next[i + j] = next[i + j].add(&a.mul(b));
            }
        }
        acc = next;
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for c in &acc {
        match c.integers_within(1) {
            Some(v) if v.is_empty() => return Candidate::None,
            Some(v) => coeffs.push(v[0].clone()),
            None => return Candidate::Ambiguous,
        }
    }
    Candidate::Poly(IntPoly::new(coeffs))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducibility of `f`, then of every base extension `f_m`, `2 <= m <= m_max`.
pub fn simplicity(
    f: &WeilPolynomial,
    spectrum: &FrobeniusSpectrum,
    m_max: u32,
    config: &Config,
) -> Result<SimplicityVerdict> {
    let certificate = irreducibility(f, Some(spectrum), config)?;
    let irreducible = !matches!(certificate, IrreducibilityCertificate::Factor(_));
    if !irreducible {
        return Ok(SimplicityVerdict {
            irreducible,
            certificate,
            absolutely_simple: AbsoluteSimplicity::No(1),
        });
    }
    for m in 2..=m_max {
        let fm = base_extend(f, m);
        if let IrreducibilityCertificate::Factor(_) = irreducibility(&fm, None, config)? {
            return Ok(SimplicityVerdict {
                irreducible,
                certificate,
                absolutely_simple: AbsoluteSimplicity::No(m),
            });
        }
    }
    Ok(SimplicityVerdict {
        irreducible,
        certificate,
        absolutely_simple: AbsoluteSimplicity::HeuristicYes(m_max),
    })
}

// -- enumeration -- //

/// All Weil q-polynomials of dimension `g` (every isogeny-class candidate
/// whose trace polynomial has its roots in `[-2√q, 2√q]`), in lexicographic
/// order of the trace polynomial's coefficients.
pub fn enumerate_weil_polynomials(g: usize, q: u64) -> Vec<WeilPolynomial> {
    let qi = Integer::from(q);
    // |e_k| <= C(g, k) (2√q)^k
    let bounds: Vec<Integer> = (0..=g)
        .map(|k| {
            let c = Integer::from(Integer::binomial_u(g as u32, k as u32));
            let sq = Integer::from(c.square_ref()) * Integer::from(4 * q).pow(k as u32);
            sq.sqrt()
        })
        .collect();
    let mut out = Vec::new();
    let mut e = vec![Integer::new(); g + 1];
    e[0] = Integer::from(1);
    enumerate_rec(1, g, &qi, &bounds, &mut e, &mut out);
    out
}

fn enumerate_rec(
    k: usize,
    g: usize,
    q: &Integer,
    bounds: &[Integer],
    e: &mut Vec<Integer>,
    out: &mut Vec<WeilPolynomial>,
) {
    if k > g {
        out.push(weil_from_trace(&derivative_of_trace(g, g, e), q, g));
        return;
    }
    let b = bounds[k].clone();
    let mut v = Integer::from(-&b);
    let mut seen = false;
    while v <= b {
        e[k] = v.clone();
        // every derivative of h has its roots in the same interval, and
        // e_k only shifts the constant term, so the valid values are contiguous
        if crate::spectrum::trace_roots_in_range(&derivative_of_trace(g, k, e), q) {
            seen = true;
            enumerate_rec(k + 1, g, q, bounds, e, out);
        } else if seen {
            break;
        }
        v += 1;
    }
}

/// The `(g − k)`-th derivative of `h(y) = Σ (−1)^j e_j y^(g−j)`, divided by
/// `(g − k)!`; it only involves `e_0, …, e_k`.
fn derivative_of_trace(g: usize, k: usize, e: &[Integer]) -> IntPoly {
    let c: Vec<Integer> = (0..=k)
        .map(|i| {
            let j = k - i;
            let binom = Integer::from(Integer::binomial_u((g - j) as u32, (k - j) as u32));
            let x = binom * &e[j];
            if j % 2 == 1 {
                -x
            } else {
                x
            }
        })
        .collect();
    IntPoly::new(c)
}

/// `x^g h(x + q/x)` as a validated Weil polynomial.
pub fn weil_from_trace(h: &IntPoly, q: &Integer, g: usize) -> WeilPolynomial {
    // (x^2 + q)^k x^(g-k)
    let base = IntPoly::new(vec![q.clone(), Integer::new(), Integer::from(1)]);
    let mut f = IntPoly::zero();
    let mut pw = IntPoly::one();
    for k in 0..=g {
        let term = pw.mul(&IntPoly::monomial(g - k)).scale(&h.coeff(k));
        f = f.add(&term);
        pw = pw.mul(&base);
    }
    parse_weil(f.coeffs(), q).expect("trace construction satisfies the functional equation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64], q: u64) -> WeilPolynomial {
        WeilPolynomial::from_i64s(c, q).unwrap()
    }

    #[test]
    fn parse_accepts_and_rejects() {
        let f = w(&[2, -1, 1], 2);
        assert_eq!((f.g(), f.p(), f.r()), (1, 2, 1));
        assert!(WeilPolynomial::from_i64s(&[2, -5, 1], 2).is_ok());
        let f = w(&[8, 0, 10, 0, 5, 0, 1], 2);
        assert_eq!(f.g(), 3);
        assert_eq!(
            WeilPolynomial::from_i64s(&[2, -1, 2], 2),
            Err(Error::NotMonic("2".into()))
        );
        assert_eq!(WeilPolynomial::from_i64s(&[1, 1], 2), Err(Error::OddDegree(1)));
        assert_eq!(WeilPolynomial::from_i64s(&[1], 2), Err(Error::OddDegree(0)));
        assert_eq!(
            WeilPolynomial::from_i64s(&[6, -1, 1], 6),
            Err(Error::NotPrimePower("6".into()))
        );
        assert_eq!(
            WeilPolynomial::from_i64s(&[4, 1, 0, 1, 1], 2),
            Err(Error::FunctionalEquationViolation { index: 1 })
        );
        assert_eq!(parse_weil(&[], &Integer::from(2)), Err(Error::Empty));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(&Integer::from(2)), Some((2, 1)));
        assert_eq!(prime_power(&Integer::from(1024)), Some((2, 10)));
        assert_eq!(prime_power(&Integer::from(3u64.pow(20))), Some((3, 20)));
        assert_eq!(prime_power(&Integer::from(18446744073709551557u64)), Some((18446744073709551557, 1)));
        assert_eq!(prime_power(&Integer::from(12)), None);
        assert_eq!(prime_power(&Integer::from(1)), None);
    }

    #[test]
    fn trace_polynomial_roundtrip() {
        let f = w(&[8, 0, 10, 0, 5, 0, 1], 2);
        // h = (y-1)(y+1)y
        assert_eq!(f.trace_polynomial(), &IntPoly::from_i64s(&[0, -1, 0, 1]));
        assert_eq!(weil_from_trace(f.trace_polynomial(), f.q(), 3), f);
    }

    #[test]
    fn newton_polygons_of_worked_examples() {
        let np = newton_polygon(&w(&[2, -1, 1], 2));
        assert_eq!(np.slopes, vec![(Rational::new(), 1), (Rational::from(1), 1)]);
        assert_eq!(classify_newton(&np, 1), NewtonClass::Ordinary);

        let np = newton_polygon(&w(&[2, 0, 1], 2));
        assert_eq!(np.slopes, vec![(Rational::from((1, 2)), 2)]);
        assert_eq!(classify_newton(&np, 1), NewtonClass::Supersingular);

        let np = newton_polygon(&w(&[8, 0, 10, 0, 5, 0, 1], 2));
        assert_eq!(
            np.slopes,
            vec![
                (Rational::new(), 2),
                (Rational::from((1, 2)), 2),
                (Rational::from(1), 2)
            ]
        );
        assert_eq!(classify_newton(&np, 3), NewtonClass::AlmostOrdinary);
    }

    #[test]
    fn newton_polygon_over_non_prime_field() {
        // x^2 - 4x + 16 over F_16: root valuations relative to q are 1/2, 1/2
        let np = newton_polygon(&w(&[16, -4, 1], 16));
        assert_eq!(np.slopes, vec![(Rational::from((1, 2)), 2)]);
        // x^2 - x + 4 over F_4: ordinary
        let np = newton_polygon(&w(&[4, -1, 1], 4));
        assert_eq!(classify_newton(&np, 1), NewtonClass::Ordinary);
    }

    #[test]
    fn base_extension_examples() {
        let f = w(&[2, 0, 1], 2);
        assert_eq!(base_extend(&f, 2).coeffs_i64().unwrap(), vec![4, 4, 1]);
        assert_eq!(base_extend(&f, 1), f);
        let f = w(&[2, -1, 1], 2);
        let f2 = base_extend(&f, 2);
        assert_eq!(f2.coeffs_i64().unwrap(), vec![4, 3, 1]);
        assert_eq!(f2.q(), &Integer::from(4));
        assert_eq!(f2.r(), 2);
    }

    #[test]
    fn base_extension_composes() {
        let f = w(&[8, 0, 10, 0, 5, 0, 1], 2);
        assert_eq!(base_extend(&base_extend(&f, 2), 3), base_extend(&f, 6));
    }

    #[test]
    fn simplicity_examples() {
        let cfg = Config::default();
        let f = w(&[2, -1, 1], 2);
        let s = compute_spectrum(&f, 128, &cfg).unwrap();
        let v = simplicity(&f, &s, 12, &cfg).unwrap();
        assert!(v.irreducible);
        assert_eq!(v.absolutely_simple, AbsoluteSimplicity::HeuristicYes(12));

        let f = w(&[8, 0, 10, 0, 5, 0, 1], 2);
        let s = compute_spectrum(&f, 128, &cfg).unwrap();
        let v = simplicity(&f, &s, 12, &cfg).unwrap();
        assert!(!v.irreducible);
        assert_eq!(
            v.certificate,
            IrreducibilityCertificate::Factor(IntPoly::from_i64s(&[2, 0, 1]))
        );
        assert_eq!(v.absolutely_simple, AbsoluteSimplicity::No(1));

        let f = w(&[2, 0, 1], 2);
        let s = compute_spectrum(&f, 128, &cfg).unwrap();
        let v = simplicity(&f, &s, 2, &cfg).unwrap();
        assert!(v.irreducible);
        assert_eq!(v.absolutely_simple, AbsoluteSimplicity::No(2));

        // (x^2 + 2)^2 over F_4 is E x E, irreducible factors but not simple
        let f = w(&[16, 0, 8, 0, 1], 4);
        let s = compute_spectrum(&f, 128, &cfg).unwrap();
        let v = simplicity(&f, &s, 12, &cfg).unwrap();
        assert!(!v.irreducible);
        assert_eq!(v.absolutely_simple, AbsoluteSimplicity::No(1));

        let f = w(&[4, 0, 0, 0, 1], 2);
        let s = compute_spectrum(&f, 128, &cfg).unwrap();
        let v = simplicity(&f, &s, 12, &cfg).unwrap();
        assert_eq!(v.absolutely_simple, AbsoluteSimplicity::No(1));
    }

    #[test]
    fn subset_exhaustion_when_no_prime_certifies() {
        // x^4 + 4 over F_2: (x^2+2x+2)(x^2-2x+2), reducible mod every prime
        let cfg = Config::default();
        let f = w(&[4, 0, 0, 0, 1], 2);
        match irreducibility(&f, None, &cfg).unwrap() {
            IrreducibilityCertificate::Factor(c) => assert_eq!(c.degree(), 2),
            other => panic!("expected factor, got {:?}", other),
        }
        // x^4 - 2x^2 + 4: trace polynomial y^2 - 6 is irreducible, Galois group V4
        let f = w(&[4, 0, -2, 0, 1], 2);
        let cert = irreducibility(&f, None, &cfg).unwrap();
        assert!(!matches!(cert, IrreducibilityCertificate::Factor(_)), "{:?}", cert);
    }

    #[test]
    fn enumeration_of_elliptic_classes() {
        // traces |a| <= 2√2 over F_2: a in -2..=2
        let all = enumerate_weil_polynomials(1, 2);
        assert_eq!(all.len(), 5);
        let all = enumerate_weil_polynomials(2, 2);
        assert!(all.iter().all(|f| f.g() == 2));
        assert_eq!(all.len(), 35);
    }
}
