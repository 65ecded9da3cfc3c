//! Exact and certified checks of the class-number inequalities on one
//! function field, and the ratio `ln h / (g ln q)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{pow, One, Signed, Zero};
use serde::Serialize;

use crate::decimal;
use crate::error::{Error, Result};
use crate::funcfield::{Cover, RamificationReport};
use crate::precision::{bits_for_digits, escalate, Interval, Verdict};
use crate::zeta::{LPolynomial, ZetaReport};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

/// `(N_m - n_m)^2 <= 16 g^2 q^m` for each `m`, given `N_1, ...` and the
/// rational counts `n_1, ...` of the same length.
pub fn lemma2_check(counts: &[BigInt], rational: &[BigInt], q: u64, g: u64) -> Vec<bool> {
    counts
        .iter()
        .zip(rational)
        .enumerate()
        .map(|(i, (n_k, n_0))| {
            let d = n_k - n_0;
            &d * &d <= big(16 * g * g) * pow(big(q), i + 1)
        })
        .collect()
}

/// `4 g h >= (q - 1) q^(g-1)`, i.e. `h >= (q - 1) q^(g-1) / (4g)`.
pub fn thm1_lower_bound(q: u64, g: u64, h: &BigInt) -> bool {
    assert!(g >= 1, "the lower bound needs g >= 1");
    big(4 * g) * h >= big(q - 1) * pow(big(q), g as usize - 1)
}

/// `1 - (1 + ln 4g) / (g ln 2)`.
pub fn effective_lower_ratio(g: u64, bits: u32) -> Interval {
    assert!(g >= 1, "the effective floor needs g >= 1");
    let one = Interval::int(1, bits);
    let ln4g = Interval::int(4 * g, bits).ln().expect("positive");
    let gln2 = Interval::int(g, bits).mul(&Interval::int(2, bits).ln().expect("positive"));
    one.sub(&one.add(&ln4g).div(&gln2).expect("nonzero"))
}

/// `h <= (1 + sqrt q)^(2g)`, decided exactly in `Z[sqrt q]`.
pub fn upper_bound_h(q: u64, g: u64, h: &BigInt) -> bool {
    // (1 + q + 2 sqrt q)^g = x + y sqrt q
    let (mut x, mut y) = (BigInt::one(), BigInt::zero());
    for _ in 0..g {
        let nx = &x * big(1 + q) + &y * big(2 * q);
        let ny = &x * 2 + &y * big(1 + q);
        x = nx;
        y = ny;
    }
    let d = h - x;
    !d.is_positive() || &d * &d <= &y * &y * big(q)
}

/// `2 ln(1 + sqrt q) / ln q`.
pub fn ratio_upper_finite_field(q: u64, bits: u32) -> Interval {
    assert!(q >= 2);
    let one_plus = Interval::int(1, bits).add(&Interval::sqrt_int(&big(q), bits));
    let num = Interval::int(2, bits).mul(&one_plus.ln().expect("positive"));
    num.div(&Interval::int(q, bits).ln().expect("positive")).expect("ln q > 0")
}

/// `ln h / (g ln q)`.
pub fn ratio(q: u64, g: u64, h: &BigInt, bits: u32) -> Result<Interval> {
    if g == 0 {
        return Err(Error::Domain("the ratio ln h / (g ln q) needs g >= 1".into()));
    }
    if !h.is_positive() {
        return Err(Error::Domain(format!("class number {h} is not positive")));
    }
    let num = Interval::int(h.clone(), bits).ln().expect("h >= 1");
    let den = Interval::int(g, bits).mul(&Interval::int(q, bits).ln().expect("q >= 2"));
    Ok(num.div(&den).expect("g ln q > 0"))
}

/// `1 / ((1 - u)(1 - q u))`, the zeta function of `F_q(x)`.
fn zeta_rational(q: u64, u: &BigRational) -> BigRational {
    let one = BigRational::one();
    let qu = u * BigRational::from_integer(big(q));
    one.clone() / ((&one - u) * (one - qu))
}

/// At `u = q^-2`: `h q^(-2g) zeta_0 <= zeta_K` and `zeta_K <= zeta_0^n`.
pub fn zeta_chain_check(lpoly: &LPolynomial, n: u64) -> Result<(bool, bool)> {
    let q = lpoly.q();
    let u = BigRational::new(BigInt::one(), big(q * q));
    let z0 = zeta_rational(q, &u);
    let zk = lpoly.zeta_eval(&u)?;
    let h = BigRational::from_integer(lpoly.class_number());
    let lower = h * pow(u.clone(), lpoly.genus() as usize) * &z0;
    Ok((lower <= zk, zk <= pow(z0, n as usize)))
}

/// `ln h / (g ln q) < 2 + (n - 1) ln zeta_{F_2(T)}(2) / (g ln 2)`, with
/// `zeta_{F_2(T)}(2) = 8/3`.
pub fn lemma3_ratio_bound(q: u64, g: u64, h: &BigInt, n: u64, digits: u32) -> Verdict {
    if g == 0 {
        return Verdict::True;
    }
    escalate(digits, |bits| {
        let lhs = ratio(q, g, h, bits).expect("g >= 1");
        let ln83 = Interval::ratio(&big(8), &big(3), bits).ln().expect("positive");
        let gln2 = Interval::int(g, bits).mul(&Interval::int(2, bits).ln().expect("positive"));
        let rhs = Interval::int(2, bits).add(
            &Interval::int(n - 1, bits)
                .mul(&ln83)
                .div(&gln2)
                .expect("nonzero"),
        );
        lhs.lt(&rhs)
    })
}

/// `q^(2 deg D) >= n^n`, the different bound with `[H : F] = 1`.
pub fn lemma5_check(q: u64, n: u64, deg_different: u64) -> bool {
    pow(big(q), 2 * deg_different as usize) >= pow(big(n), n as usize)
}

/// Per ramified place: `2 alpha >= k e`, and `e <= q^(d k)`.
pub fn hasse_arf_checks(report: &RamificationReport, q: u64) -> (bool, bool) {
    let first = report.ramified.iter().all(|r| 2 * r.alpha >= r.k * r.e);
    let second = report
        .ramified
        .iter()
        .all(|r| big(r.e) <= pow(big(q), (r.degree as u64 * r.k) as usize));
    (first, second)
}

/// `A_n = h (q^(n-g+1) - 1)/(q - 1)` for `max(0, 2g-1) <= n <= 2g+1`.
pub fn riemann_roch_check(lpoly: &LPolynomial) -> Result<bool> {
    let (q, g) = (lpoly.q(), lpoly.genus());
    let a = lpoly.divisor_count_series(2 * g as usize + 1)?;
    let h = lpoly.class_number();
    Ok(((2 * g).saturating_sub(1)..=2 * g + 1)
        .all(|n| a[n as usize] == &h * (pow(big(q), (n + 1 - g) as usize) - 1) / big(q - 1)))
}

/// Results of every check on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub lemma2: Verdict,
    pub thm1_lower: Verdict,
    pub effective_lower: Verdict,
    pub upper_h: Verdict,
    pub ratio_upper: Verdict,
    pub zeta_chain: Verdict,
    pub lemma5: Verdict,
    pub hasse_arf_first: Verdict,
    pub hasse_arf_second: Verdict,
    pub riemann_roch: Verdict,
    pub lemma3: Verdict,
}

/// Checks that hold for every valid instance; a `false` here is a bug.
pub const HARD_CHECKS: [&str; 9] = [
    "lemma2",
    "upper_h",
    "ratio_upper",
    "zeta_chain",
    "lemma5",
    "hasse_arf_first",
    "hasse_arf_second",
    "riemann_roch",
    "lemma3",
];

/// Checks whose hypotheses are asymptotic in `g`.
pub const REPORT_ONLY_CHECKS: [&str; 2] = ["thm1_lower", "effective_lower"];

impl Checks {
    /// `(name, verdict)` in the fixed column order.
    pub fn named(&self) -> [(&'static str, Verdict); 11] {
        [
            ("lemma2", self.lemma2),
            ("thm1_lower", self.thm1_lower),
            ("effective_lower", self.effective_lower),
            ("upper_h", self.upper_h),
            ("ratio_upper", self.ratio_upper),
            ("zeta_chain", self.zeta_chain),
            ("lemma5", self.lemma5),
            ("hasse_arf_first", self.hasse_arf_first),
            ("hasse_arf_second", self.hasse_arf_second),
            ("riemann_roch", self.riemann_roch),
            ("lemma3", self.lemma3),
        ]
    }

    /// Hard checks that came out false.
    pub fn hard_failures(&self) -> Vec<&'static str> {
        self.named()
            .into_iter()
            .filter(|(name, v)| HARD_CHECKS.contains(name) && *v == Verdict::False)
            .map(|(name, _)| name)
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub spec: String,
    pub family: &'static str,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub f: String,
    pub n: u64,
    pub g: u64,
    #[serde(with = "decimal")]
    pub h: BigInt,
    pub deg_diff: u64,
    /// `ln h / (g ln q)` to the requested digits; absent for `g = 0`.
    pub ratio: Option<String>,
    pub checks: Checks,
}

/// Runs every check on one cover.
pub fn bounds_report(
    cover: &Cover,
    ram: &RamificationReport,
    zeta: &ZetaReport,
    digits: u32,
) -> Result<BoundsReport> {
    let lpoly = &zeta.lpoly;
    let (q, g, n) = (cover.q(), lpoly.genus(), cover.degree());
    let h = &zeta.h;
    let digits = digits.max(30);
    let b = (2 * g).max(1);
    let counts = lpoly.place_counts(b);
    let rational: Vec<BigInt> = crate::funcfield::rational_place_counts(q, b as u32)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let lemma2 = lemma2_check(&counts, &rational, q, g).into_iter().all(|ok| ok);
    let (zl, zu) = zeta_chain_check(lpoly, n)?;
    let (ha1, ha2) = hasse_arf_checks(ram, q);
    let (ratio_text, thm1, eff, upper) = if g == 0 {
        (None, Verdict::True, Verdict::True, Verdict::True)
    } else {
        let eff = escalate(digits, |bits| {
            effective_lower_ratio(g, bits).le(&ratio(q, g, h, bits).expect("g >= 1"))
        });
        let upper = escalate(digits, |bits| {
            ratio(q, g, h, bits)
                .expect("g >= 1")
                .le(&ratio_upper_finite_field(q, bits))
        });
        let text = ratio(q, g, h, bits_for_digits(digits))?.to_decimal(digits);
        (Some(text), Verdict::from_bool(thm1_lower_bound(q, g, h)), eff, upper)
    };
    let checks = Checks {
        lemma2: Verdict::from_bool(lemma2),
        thm1_lower: thm1,
        effective_lower: eff,
        upper_h: Verdict::from_bool(upper_bound_h(q, g, h)),
        ratio_upper: upper,
        zeta_chain: Verdict::from_bool(zl && zu),
        lemma5: Verdict::from_bool(lemma5_check(q, n, ram.different_degree)),
        hasse_arf_first: Verdict::from_bool(ha1),
        hasse_arf_second: Verdict::from_bool(ha2),
        riemann_roch: Verdict::from_bool(riemann_roch_check(lpoly)?),
        lemma3: lemma3_ratio_bound(q, g, h, n, digits),
    };
    Ok(BoundsReport {
        spec: cover.to_string(),
        family: cover.family().name(),
        q,
        m: cover.m(),
        f: cover.f().to_string(),
        n,
        g,
        h: h.clone(),
        deg_diff: ram.different_degree,
        ratio: ratio_text,
        checks,
    })
}
