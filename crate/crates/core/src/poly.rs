//! Dense univariate polynomials over Z, with the exact real-root machinery
//! (square-free decomposition, Sturm sequences, bisection) and a small
//! F_l toolbox for irreducibility certificates.

use std::cmp::Ordering;
use std::fmt;

use rug::{Float, Integer, Rational};

/// Polynomial with integer coefficients, ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Integer::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Integer::new(); k + 1];
        c[k] = Integer::from(1);
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> &Integer {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && *self.lead() == 1
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &Integer) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(c * k)).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Integer::from(c * i as u64))
                .collect(),
        )
    }

    /// Positive gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Integer {
        self.coeffs
            .iter()
            .fold(Integer::new(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if *self.lead() < 0 {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|x| Integer::from(x.div_exact_ref(&c))).collect())
    }

    /// Exact quotient `self / d` in Z[x], or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = d.lead();
        let dd = d.degree();
        let mut q = vec![Integer::new(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dd];
            if !top.is_divisible(dl) {
                return None;
            }
            let c = Integer::from(top.div_exact_ref(dl));
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= Integer::from(&c * dc);
            }
            q[k] = c;
        }
        if rem.iter().all(|c| *c == 0) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Remainder of `self` modulo `d` over Q, scaled back to a primitive
    /// integer polynomial by a positive factor.
    fn rational_rem(&self, d: &IntPoly) -> IntPoly {
        let mut rem: Vec<Rational> = self.coeffs.iter().map(Rational::from).collect();
        let dd = d.degree();
        let dl = Rational::from(d.lead());
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = Rational::from(rem.last().unwrap() / &dl);
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= Rational::from(&c * dc);
            }
            rem.pop();
            while rem.last().is_some_and(|c| *c == 0) {
                rem.pop();
            }
        }
        rational_to_int_positive(&rem)
    }

    /// Primitive gcd over Q, normalized with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.rational_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Yun's square-free decomposition of a primitive polynomial:
    /// `self = ±prod_k s_k^k`, returned as `(s_k, k)` with `deg s_k > 0`.
    pub fn square_free_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive();
        let mut out = Vec::new();
        if f.degree() == 0 {
            return out;
        }
        // Quotients by primitive divisors stay in Z[x] (Gauss).
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.exact_div(&a).expect("gcd divides f");
        let c = fp.exact_div(&a).expect("gcd divides f'");
        let mut d = c.sub_poly(&b.derivative());
        let mut k = 1;
        loop {
            let s = b.gcd(&d);
            if s.degree() > 0 {
                out.push((s.clone(), k));
            }
            let nb = b.exact_div(&s).expect("yun step divides b");
            if nb.degree() == 0 {
                break;
            }
            let c = d.exact_div(&s).expect("yun step divides d");
            b = nb;
            d = c.sub_poly(&b.derivative());
            k += 1;
        }
        out
    }

    fn sub_poly(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Sign of `self(x)` for rational `x`.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (n, d) = (x.numer(), x.denom());
        let deg = self.degree();
        // d^deg * p(n/d) by Horner in homogeneous form
        let mut acc = Integer::from(self.lead());
        let mut dpow = Integer::from(1);
        for i in (0..deg).rev() {
            dpow *= d;
            acc *= n;
            acc += Integer::from(&self.coeffs[i] * &dpow);
        }
        acc.cmp0()
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Cauchy bound: every real root lies in `(-M, M)`.
    pub fn root_bound(&self) -> Integer {
        let l = self.lead().clone().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| Integer::from(c.abs_ref()))
            .max()
            .unwrap_or_default();
        Integer::from(&m / &l) + 2
    }

    /// Sturm sequence of a square-free polynomial.
    pub fn sturm_sequence(&self) -> Vec<IntPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            if seq[n - 1].degree() == 0 {
                break;
            }
            let r = seq[n - 2].rational_rem(&seq[n - 1]);
            seq.push(r.scale(&Integer::from(-1)));
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(sturm: &[IntPoly], a: &Rational, b: &Rational) -> usize {
        let va = sign_variations(sturm.iter().map(|p| p.sign_at(a)));
        let vb = sign_variations(sturm.iter().map(|p| p.sign_at(b)));
        va.saturating_sub(vb)
    }

    /// Number of distinct real roots of a square-free polynomial.
    pub fn count_real_roots(sturm: &[IntPoly]) -> usize {
        let at = |neg: bool| {
            sturm.iter().map(move |p| {
                if p.is_zero() {
                    return Ordering::Equal;
                }
                let s = p.lead().cmp0();
                if neg && p.degree() % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            })
        };
        sign_variations(at(true)).saturating_sub(sign_variations(at(false)))
    }

    /// Isolating intervals for all real roots of a square-free polynomial,
    /// sorted ascending. Each interval `(lo, hi]` holds exactly one root;
    /// a degenerate interval `lo == hi` is an exact rational root.
    pub fn isolate_real_roots(&self) -> Vec<RootInterval> {
        let sturm = self.sturm_sequence();
        let m = Rational::from(self.root_bound());
        let mut stack = vec![(Rational::from(-&m), m)];
        let mut out = Vec::new();
        while let Some((a, b)) = stack.pop() {
            let n = Self::count_roots(&sturm, &a, &b);
            match n {
                0 => {}
                1 => {
                    let iv = RootInterval { lo: a, hi: b };
                    out.push(iv.normalized(self));
                }
                _ => {
                    let mid = Rational::from(&a + &b) / 2u32;
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }
}

fn horner(p: &IntPoly, x: &Float) -> Float {
    let mut acc = Float::with_val(x.prec(), 0);
    for c in p.coeffs().iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

fn sign_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn rational_to_int_positive(c: &[Rational]) -> IntPoly {
    let l = c
        .iter()
        .fold(Integer::from(1), |acc, r| acc.lcm(r.denom()));
    IntPoly::new(
        c.iter()
            .map(|r| r.numer() * Integer::from(&l / r.denom()))
            .collect(),
    )
}

/// A real root of a square-free integer polynomial isolated in `(lo, hi]`,
/// or known exactly when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    fn normalized(self, p: &IntPoly) -> RootInterval {
        if p.sign_at(&self.hi) == Ordering::Equal {
            RootInterval {
                lo: self.hi.clone(),
                hi: self.hi,
            }
        } else {
            self
        }
    }

    /// One bisection step; `p` must be the square-free polynomial the root
    /// belongs to.
    pub fn bisect(&mut self, p: &IntPoly) {
        if self.is_exact() {
            return;
        }
        let sb = p.sign_at(&self.hi);
        let mid = Rational::from(&self.lo + &self.hi) / 2u32;
        match p.sign_at(&mid) {
            Ordering::Equal => {
                self.lo = mid.clone();
                self.hi = mid;
            }
            s if s == sb => self.hi = mid,
            _ => self.lo = mid,
        }
    }

    /// Shrink until the width is at most `2^-bits`: bisection to a
    /// moderate width, then Newton steps at doubling precision whose result
    /// is accepted only after an exact sign change inside the interval.
    pub fn refine_to(&mut self, p: &IntPoly, bits: u32) {
        let target = Rational::from((1, Integer::from(1) << bits));
        let coarse = Rational::from((1, Integer::from(1) << bits.min(64)));
        while !self.is_exact() && self.width() > coarse {
            self.bisect(p);
        }
        if self.is_exact() || self.width() <= target {
            return;
        }
        if !self.newton_refine(p, bits) {
            while !self.is_exact() && self.width() > target {
                self.bisect(p);
            }
        }
    }

    fn newton_refine(&mut self, p: &IntPoly, bits: u32) -> bool {
        let dp = p.derivative();
        let top = bits + 64;
        let mut precs = vec![top];
        while *precs.last().unwrap() > 128 {
            let next = precs.last().unwrap() / 2 + 8;
            precs.push(next.max(128));
            if next <= 128 {
                break;
            }
        }
        precs.reverse();
        let mid = Rational::from(&self.lo + &self.hi) / 2u32;
        let mut x = Float::with_val(precs[0], &mid);
        for &prec in precs.iter().chain(std::iter::once(&top)) {
            x.set_prec(prec);
            let fx = horner(p, &x);
            let dx = horner(&dp, &x);
            if dx.is_zero() {
                return false;
            }
            x -= fx / dx;
        }
        let k = bits + 1;
        let Some(a) = (x << k).to_integer().map(|a| a - 1u32) else {
            return false;
        };
        let scale = Integer::from(1) << k;
        let lo = Rational::from((a.clone(), scale.clone()));
        let hi = Rational::from((a + 2u32, scale));
        if lo < self.lo || hi > self.hi {
            return false;
        }
        let (sl, sh) = (p.sign_at(&lo), p.sign_at(&hi));
        for (s, v) in [(sh, &hi), (sl, &lo)] {
            if s == Ordering::Equal && *v > self.lo {
                self.lo = v.clone();
                self.hi = v.clone();
                return true;
            }
        }
        if sl == Ordering::Equal || sl == sh {
            return false;
        }
        self.lo = lo;
        self.hi = hi;
        true
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let a = Integer::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = a != 1 || i == 0;
            if show_coeff {
                write!(f, "{}", a)?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

// -- arithmetic over F_l -- //

/// Polynomial over F_l, ascending coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    l: u64,
    c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, l: u64) -> u64 {
    ((a as u128 * b as u128) % l as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut r = 1 % l;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, l);
        }
        a = mulmod(a, a, l);
        e >>= 1;
    }
    r
}

impl ModPoly {
    pub fn new(l: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { l, c }
    }

    pub fn reduce(p: &IntPoly, l: u64) -> Self {
        let li = Integer::from(l);
        let c = p
            .coeffs()
            .iter()
            .map(|x| {
                let mut r = Integer::from(x % &li);
                if r < 0 {
                    r += &li;
                }
                r.to_u64().unwrap()
            })
            .collect();
        Self::new(l, c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn x(l: u64) -> Self {
        Self::new(l, vec![0, 1])
    }

    fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let l = self.l;
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + l - b) % l
            })
            .collect();
        Self::new(l, c)
    }

    fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.l, vec![]);
        }
        let l = self.l;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, l)) % l;
            }
        }
        Self::new(l, c)
    }

    fn rem(&self, m: &ModPoly) -> ModPoly {
        let l = self.l;
        let mut r = self.c.clone();
        let inv = powmod(*m.c.last().unwrap(), l - 2, l);
        let dm = m.degree();
        while r.len() > dm && !r.is_empty() {
            let k = r.len() - 1 - dm;
            let f = mulmod(*r.last().unwrap(), inv, l);
            for (j, &mc) in m.c.iter().enumerate() {
                r[k + j] = (r[k + j] + l - mulmod(f, mc, l)) % l;
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Self::new(l, r)
    }

    fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn derivative(&self) -> ModPoly {
        let l = self.l;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mulmod(a, i as u64 % l, l))
            .collect();
        Self::new(l, c)
    }

    fn pow_mod(&self, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut r = Self::new(self.l, vec![1]);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Ben-Or irreducibility test for a monic polynomial over F_l.
    pub fn is_irreducible(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let x = Self::x(self.l);
        let mut xp = x.clone();
        for _ in 1..=n / 2 {
            xp = xp.pow_mod(self.l, self);
            let g = self.gcd(&xp.sub(&x));
            if g.degree() > 0 {
                return false;
            }
        }
        true
    }
}

/// Small primes for mod-l certificates.
pub fn small_primes(bound: u64) -> Vec<u64> {
    (2..bound)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn product_oracle_for_degree_six_example() {
        let f = p(&[2, -1, 1]).mul(&p(&[2, 1, 1])).mul(&p(&[2, 0, 1]));
        assert_eq!(f.to_i64s().unwrap(), vec![8, 0, 10, 0, 5, 0, 1]);
    }

    #[test]
    fn exact_division_and_failure() {
        let f = p(&[8, 0, 10, 0, 5, 0, 1]);
        let q = f.exact_div(&p(&[2, 0, 1])).unwrap();
        assert_eq!(q, p(&[4, 0, 3, 0, 1]));
        assert!(f.exact_div(&p(&[1, 1])).is_none());
    }

    #[test]
    fn square_free_decomposition_of_cube_times_line() {
        // (x^2+2)^3 (x-1)
        let s = p(&[2, 0, 1]);
        let f = s.mul(&s).mul(&s).mul(&p(&[-1, 1]));
        let d = f.square_free_decomposition();
        assert_eq!(d, vec![(p(&[-1, 1]), 1), (s, 3)]);
    }

    #[test]
    fn sturm_isolation_finds_all_roots() {
        // (x-1)(x+2)(2x-1)
        let f = p(&[-1, 1]).mul(&p(&[2, 1])).mul(&p(&[-1, 2]));
        let roots = f.isolate_real_roots();
        assert_eq!(roots.len(), 3);
        let exact: Vec<_> = roots.iter().filter(|r| r.is_exact()).collect();
        assert!(!exact.is_empty());
        assert!(roots[0].hi >= -2 && roots[0].lo < -2 || roots[0].lo == -2);
        let sturm = p(&[2, 0, 1]).sturm_sequence();
        assert_eq!(IntPoly::count_real_roots(&sturm), 0);
    }

    #[test]
    fn refinement_hits_sqrt_two() {
        let f = p(&[-2, 0, 1]);
        let mut roots = f.isolate_real_roots();
        let r = &mut roots[1];
        r.refine_to(&f, 60);
        let lo = r.lo.to_f64();
        assert!((lo - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ben_or_irreducibility() {
        // x^2 - x + 2 mod 3 is irreducible; x^2 + 2 mod 3 = (x-1)(x+1)
        assert!(ModPoly::reduce(&p(&[2, -1, 1]), 3).is_irreducible());
        assert!(!ModPoly::reduce(&p(&[2, 0, 1]), 3).is_irreducible());
        // x^4 + 1 is reducible modulo every prime
        for l in small_primes(50).into_iter().skip(1) {
            assert!(!ModPoly::reduce(&p(&[1, 0, 0, 0, 1]), l).is_irreducible());
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[2, -1, 1]).to_string(), "x^2 - x + 2");
        assert_eq!(p(&[8, 0, 10, 0, 5, 0, 1]).to_string(), "x^6 + 5x^4 + 10x^2 + 8");
    }
}
