//! Certified real arithmetic on dyadic intervals.
//!
//! An [`Interval`] holds integers `lo <= hi` and stands for the real range
//! `[lo, hi] * 2^-bits`. Every operation rounds outward, so the true value
//! of an expression always lies inside the interval computed for it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Outcome of a comparison between intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Inconclusive,
        }
    }
}

/// Working precision in bits for `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Evaluates `check` at `digits`, `2 digits`, `4 digits` until it decides.
pub fn escalate(digits: u32, check: impl Fn(u32) -> Verdict) -> Verdict {
    let mut d = digits.max(1);
    for _ in 0..3 {
        let v = check(bits_for_digits(d));
        if v != Verdict::Inconclusive {
            return v;
        }
        d *= 2;
    }
    Verdict::Inconclusive
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

impl Interval {
    /// The rational `num / den`, `den != 0`.
    pub fn ratio(num: &BigInt, den: &BigInt, bits: u32) -> Interval {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = num << bits as usize;
        Interval {
            lo: floor_div(&scaled, &den),
            hi: ceil_div(&scaled, &den),
            bits,
        }
    }

    pub fn int(v: impl Into<BigInt>, bits: u32) -> Interval {
        let v: BigInt = v.into() << bits as usize;
        Interval { lo: v.clone(), hi: v, bits }
    }

    /// `sqrt(n)` for a nonnegative integer.
    pub fn sqrt_int(n: &BigInt, bits: u32) -> Interval {
        assert!(!n.is_negative(), "square root of a negative number");
        let scaled = n << (2 * bits as usize);
        let lo = scaled.sqrt();
        let hi = if &lo * &lo == scaled { lo.clone() } else { &lo + 1 };
        Interval { lo, hi, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn same(&self, other: &Interval) {
        assert_eq!(self.bits, other.bits, "intervals at different precisions");
    }

    pub fn add(&self, other: &Interval) -> Interval {
        self.same(other);
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.same(other);
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        self.same(other);
        let scale = pow2(self.bits);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().expect("nonempty");
        let max = products.iter().max().expect("nonempty");
        Interval {
            lo: floor_div(min, &scale),
            hi: ceil_div(max, &scale),
            bits: self.bits,
        }
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        self.same(other);
        if !(other.lo.is_positive() || other.hi.is_negative()) {
            return None;
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let scaled = a << self.bits as usize;
                let l = floor_div(&scaled, b);
                let h = ceil_div(&scaled, b);
                lo = Some(lo.map_or(l.clone(), |x| x.min(l)));
                hi = Some(hi.map_or(h.clone(), |x| x.max(h)));
            }
        }
        Some(Interval {
            lo: lo.expect("set"),
            hi: hi.expect("set"),
            bits: self.bits,
        })
    }

    /// Natural logarithm of an interval of positive numbers.
    pub fn ln(&self) -> Option<Interval> {
        if !self.lo.is_positive() {
            return None;
        }
        Some(Interval {
            lo: ln_bound(&self.lo, self.bits, false),
            hi: ln_bound(&self.hi, self.bits, true),
            bits: self.bits,
        })
    }

    pub fn le(&self, other: &Interval) -> Verdict {
        self.same(other);
        if self.hi <= other.lo {
            Verdict::True
        } else if self.lo > other.hi {
            Verdict::False
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn lt(&self, other: &Interval) -> Verdict {
        self.same(other);
        if self.hi < other.lo {
            Verdict::True
        } else if self.lo >= other.hi {
            Verdict::False
        } else {
            Verdict::Inconclusive
        }
    }

    /// Upper bound on `|x - 1|` over the interval.
    pub fn distance_to_one(&self) -> Interval {
        let one = Interval::int(1, self.bits);
        let d = self.sub(&one);
        let (lo, hi) = if !d.lo.is_negative() {
            (d.lo, d.hi)
        } else if !d.hi.is_positive() {
            (-d.hi, -d.lo)
        } else {
            let hi = d.hi.max(-d.lo);
            (BigInt::zero(), hi)
        };
        Interval { lo, hi, bits: self.bits }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        self.same(other);
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            bits: self.bits,
        }
    }

    /// The midpoint rounded to `sig` significant decimal digits.
    pub fn to_decimal(&self, sig: u32) -> String {
        let num = &self.lo + &self.hi;
        let den = pow2(self.bits + 1);
        format_decimal(&num, &den, sig)
    }

    /// Nearest `f64` to the midpoint, for plotting.
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(17).parse().expect("decimal output parses")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(30))
    }
}

/// Lower (or upper) bound for `ln(a 2^-bits)`, `a > 0`, in units of `2^-bits`.
fn ln_bound(a: &BigInt, bits: u32, upper: bool) -> BigInt {
    let w = bits + 64;
    // a 2^-bits = 2^k y with y in [1, 2), and t = (y - 1)/(y + 1)
    let k = a.bits() as i64 - 1 - bits as i64;
    let p = BigInt::one() << (a.bits() - 1) as usize;
    let (tn, td) = (a - &p, a + &p);
    let atanh = atanh_bound(&tn, &td, w, upper);
    let ln2 = atanh_bound(&BigInt::one(), &BigInt::from(3), w, upper == (k >= 0))
        * BigInt::from(2);
    let total = ln2 * BigInt::from(k) + atanh * BigInt::from(2);
    let scale = pow2(w - bits);
    if upper {
        ceil_div(&total, &scale)
    } else {
        floor_div(&total, &scale)
    }
}

/// Bound for `atanh(n/d)` with `0 <= n/d <= 1/3`, in units of `2^-w`.
fn atanh_bound(n: &BigInt, d: &BigInt, w: u32, upper: bool) -> BigInt {
    let one = pow2(w);
    let scaled = n << w as usize;
    let t = if upper { ceil_div(&scaled, d) } else { floor_div(&scaled, d) };
    let round = |x: &BigInt, y: &BigInt| if upper { ceil_div(x, y) } else { floor_div(x, y) };
    let t2 = round(&(&t * &t), &one);
    let mut power = t;
    let mut sum = BigInt::zero();
    let mut i = 0u64;
    while !power.is_zero() {
        sum += round(&power, &BigInt::from(2 * i + 1));
        power = round(&(&power * &t2), &one);
        i += 1;
        if upper && power <= BigInt::one() {
            // Remaining terms sum to at most power / (1 - t^2) <= 2 power.
            sum += &power * 2;
            break;
        }
    }
    sum
}

fn format_decimal(num: &BigInt, den: &BigInt, sig: u32) -> String {
    if num.is_zero() {
        return "0".into();
    }
    let sign = if num.is_negative() != den.is_negative() { "-" } else { "" };
    let (num, den) = (num.abs(), den.abs());
    let sig = sig.max(1) as i64;
    // Decimal exponent estimate, corrected below.
    let mut exp10 = ((num.bits() as f64 - den.bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let digits = loop {
        let s = sig - 1 - exp10;
        let (n, d) = if s >= 0 {
            (&num * num_traits::pow(BigInt::from(10), s as usize), den.clone())
        } else {
            (num.clone(), &den * num_traits::pow(BigInt::from(10), (-s) as usize))
        };
        let r = floor_div(&(n * 2 + &d), &(&d * 2));
        let text = r.to_string();
        match (text.len() as i64).cmp(&sig) {
            Ordering::Equal => break text,
            Ordering::Greater => exp10 += 1,
            Ordering::Less => exp10 -= 1,
        }
    };
    let body = if exp10 >= sig - 1 {
        format!("{digits}{}", "0".repeat((exp10 - sig + 1) as usize))
    } else if exp10 >= 0 {
        let (a, b) = digits.split_at(exp10 as usize + 1);
        format!("{a}.{b}")
    } else {
        format!("0.{}{digits}", "0".repeat((-exp10 - 1) as usize))
    };
    format!("{sign}{body}")
}
