//! Real and complex interval arithmetic on top of MPFR.
//!
//! Every operation rounds the lower endpoint down and the upper endpoint up,
//! so a computed interval always contains the exact result of the same
//! operation applied to any points of the input intervals.

use std::fmt;

use rug::float::{Constant, Round};
use rug::{Float, Integer, Rational};

/// A closed real interval `[lo, hi]` with MPFR endpoints.
#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.20e}, {:.20e}]",
            self.lo.to_f64(),
            self.hi.to_f64()
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2) as usize;
        let d = self.width_log2().map_or(digits, |w| ((-w).max(1) as f64 * std::f64::consts::LOG10_2) as usize + 1);
        write!(f, "{} ± 2^{}", self.mid().to_string_radix(10, Some(d.clamp(2, digits))), self.width_log2().unwrap_or(0))
    }
}

impl Interval {
    pub fn new(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point_int(prec: u32, v: &Integer) -> Self {
        let (lo, _) = Float::with_val_round(prec, v, Round::Down);
        let (hi, _) = Float::with_val_round(prec, v, Round::Up);
        Interval { lo, hi }
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        Self::point_int(prec, &Integer::from(v))
    }

    pub fn point_rational(prec: u32, v: &Rational) -> Self {
        let (lo, _) = Float::with_val_round(prec, v, Round::Down);
        let (hi, _) = Float::with_val_round(prec, v, Round::Up);
        Interval { lo, hi }
    }

    /// Enclosure of the rational interval `[a, b]`.
    pub fn from_rationals(prec: u32, a: &Rational, b: &Rational) -> Self {
        let (lo, _) = Float::with_val_round(prec, a, Round::Down);
        let (hi, _) = Float::with_val_round(prec, b, Round::Up);
        Interval { lo, hi }
    }

    pub fn pi(prec: u32) -> Self {
        let (lo, _) = Float::with_val_round(prec, Constant::Pi, Round::Down);
        let (hi, _) = Float::with_val_round(prec, Constant::Pi, Round::Up);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    fn joint_prec(&self, other: &Interval) -> u32 {
        self.prec().max(other.prec())
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> Float {
        Float::with_val_round(self.prec(), &self.hi - &self.lo, Round::Up).0
    }

    /// Upper bound on `log2(width)`, or `None` for a point interval.
    pub fn width_log2(&self) -> Option<i64> {
        let w = self.width();
        if w.is_zero() {
            None
        } else {
            w.get_exp().map(|e| e as i64)
        }
    }

    pub fn mid(&self) -> Float {
        let mut m = Float::with_val(self.prec() + 1, &self.lo + &self.hi);
        m /= 2;
        m
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains_int(&self, v: &Integer) -> bool {
        self.lo <= *v && self.hi >= *v
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && self.hi >= other.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let p = self.joint_prec(other);
        Interval {
            lo: Float::with_val_round(p, &self.lo + &other.lo, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi + &other.hi, Round::Up).0,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let p = self.joint_prec(other);
        let ends = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in ends {
            let d = Float::with_val_round(p, a * b, Round::Down).0;
            let u = Float::with_val_round(p, a * b, Round::Up).0;
            lo = Some(match lo {
                Some(x) if x <= d => x,
                _ => d,
            });
            hi = Some(match hi {
                Some(x) if x >= u => x,
                _ => u,
            });
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    pub fn mul_int(&self, k: i64) -> Interval {
        self.mul(&Interval::from_i64(self.prec(), k))
    }

    /// Division; the divisor must not contain zero.
    pub fn div(&self, other: &Interval) -> Interval {
        assert!(!other.contains_zero(), "interval division by zero");
        let p = self.joint_prec(other);
        let inv = Interval {
            lo: Float::with_val_round(p, 1 / &other.hi, Round::Down).0,
            hi: Float::with_val_round(p, 1 / &other.lo, Round::Up).0,
        };
        self.mul(&inv)
    }

    pub fn square(&self) -> Interval {
        let p = self.prec();
        let a = Float::with_val_round(p, self.lo.clone().abs(), Round::Down).0;
        let b = Float::with_val_round(p, self.hi.clone().abs(), Round::Down).0;
        let (small, big) = if a <= b { (a, b) } else { (b, a) };
        let lo = if self.contains_zero() {
            Float::new(p)
        } else {
            Float::with_val_round(p, &small * &small, Round::Down).0
        };
        let hi = Float::with_val_round(p, &big * &big, Round::Up).0;
        Interval { lo, hi }
    }

    /// Square root with negative parts clamped to zero.
    pub fn sqrt(&self) -> Interval {
        let p = self.prec();
        let clamp = |x: &Float| {
            if *x < 0 {
                Float::new(p)
            } else {
                x.clone()
            }
        };
        Interval {
            lo: Float::with_val_round(p, clamp(&self.lo).sqrt_ref(), Round::Down).0,
            hi: Float::with_val_round(p, clamp(&self.hi).sqrt_ref(), Round::Up).0,
        }
    }

    /// `acos` on the intersection with `[-1, 1]`; decreasing, so endpoints swap.
    pub fn acos(&self) -> Interval {
        let p = self.prec();
        let clamp = |x: &Float| {
            if *x < -1 {
                Float::with_val(p, -1)
            } else if *x > 1 {
                Float::with_val(p, 1)
            } else {
                x.clone()
            }
        };
        let mut lo = Float::with_val(p, clamp(&self.hi));
        lo.acos_round(Round::Down);
        let mut hi = Float::with_val(p, clamp(&self.lo));
        hi.acos_round(Round::Up);
        Interval { lo, hi }
    }

    /// Upper bound on the distance from any point of the interval to `k`.
    pub fn max_dist_to(&self, k: &Integer) -> Float {
        let p = self.prec();
        let a = Float::with_val_round(p, k - &self.lo, Round::Up).0;
        let b = Float::with_val_round(p, &self.hi - k, Round::Up).0;
        if a > b {
            a
        } else {
            b
        }
    }

    /// The integer nearest to the midpoint.
    pub fn nearest_int(&self) -> Integer {
        self.mid()
            .to_integer()
            .expect("finite interval has an integer midpoint rounding")
    }

    /// True if the interval contains at least one integer.
    pub fn meets_integer(&self) -> bool {
        let c = self.lo.clone().ceil();
        c <= self.hi
    }

    /// The integers contained in the interval, or `None` if there are more than `limit`.
    pub fn integers_within(&self, limit: usize) -> Option<Vec<Integer>> {
        let lo = self.lo.clone().ceil().to_integer()?;
        let hi = self.hi.clone().floor().to_integer()?;
        let mut out = Vec::new();
        let mut k = lo;
        while k <= hi {
            if out.len() == limit {
                return None;
            }
            out.push(k.clone());
            k += 1;
        }
        Some(out)
    }

    /// Change of working precision; endpoints are rounded outward.
    pub fn with_prec(&self, prec: u32) -> Interval {
        Interval {
            lo: Float::with_val_round(prec, &self.lo, Round::Down).0,
            hi: Float::with_val_round(prec, &self.hi, Round::Up).0,
        }
    }
}

/// A complex rectangle `re + i·im`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        let p = re.prec();
        ComplexInterval {
            re,
            im: Interval::from_i64(p, 0),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexInterval {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexInterval {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ComplexInterval {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn contains_int(&self, v: &Integer) -> bool {
        self.re.contains_int(v) && self.im.contains_zero()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    /// Squared modulus enclosure.
    pub fn norm_sqr(&self) -> Interval {
        self.re.square().add(&self.im.square())
    }

    /// Ball center (midpoint of the rectangle).
    pub fn center(&self) -> (Float, Float) {
        (self.re.mid(), self.im.mid())
    }

    /// Ball radius: an upper bound on half the rectangle's diagonal.
    pub fn radius(&self) -> Float {
        let p = self.re.prec();
        let hw = Float::with_val_round(p, self.re.width() / 2u32, Round::Up).0;
        let hh = Float::with_val_round(p, self.im.width() / 2u32, Round::Up).0;
        let s = Float::with_val_round(p, &hw * &hw, Round::Up).0
            + Float::with_val_round(p, &hh * &hh, Round::Up).0;
        Float::with_val_round(p, s.sqrt_ref(), Round::Up).0
    }
}
