//! L-polynomials of function fields over `F_q` and the quantities derived
//! from them: class number, divisor counts and zeta values.
//!
//! Everything is written in the variable `u = q^{-s}`, so that
//! `Z(u) = P(u) / ((1 - u)(1 - q u))` and `h = P(1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::arith::{divisors, mobius};
use crate::decimal;
use crate::error::{Error, Result};
use crate::funcfield::s_from_counts;

/// `P(u) = sum_i c_i u^i` of degree `2g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Wire")]
pub struct LPolynomial {
    q: u64,
    g: u64,
    #[serde(with = "decimal::vec")]
    coeffs: Vec<BigInt>,
}

#[derive(Deserialize)]
struct Wire {
    q: u64,
    g: u64,
    #[serde(with = "decimal::vec")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<Wire> for LPolynomial {
    type Error = Error;

    fn try_from(w: Wire) -> Result<LPolynomial> {
        LPolynomial::from_coeffs(w.q, w.g, w.coeffs)
    }
}

fn pow(q: u64, k: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), k as usize)
}

impl LPolynomial {
    /// Builds `P` from `N_1, ..., N_g` (further counts are ignored).
    ///
    /// The power sums `a_k = q^k + 1 - S_k` of the reciprocal roots give
    /// the elementary symmetric functions through Newton's identities;
    /// the upper half of `P` comes from the functional equation.
    pub fn from_counts(q: u64, g: u64, counts: &[u64]) -> Result<LPolynomial> {
        if (counts.len() as u64) < g {
            return Err(Error::Domain(format!(
                "genus {g} needs place counts up to degree {g}, got {}",
                counts.len()
            )));
        }
        let a: Vec<BigInt> = (1..=g)
            .map(|k| pow(q, k) + 1 - s_from_counts(counts, k as u32))
            .collect();
        let mut e: Vec<BigInt> = vec![BigInt::one()];
        for k in 1..=g as usize {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                let term = BigRational::from_integer(&e[k - j] * &a[j - 1]);
                if j % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let ek = acc / BigRational::from_integer(BigInt::from(k));
            if !ek.is_integer() {
                return Err(Error::Invariant(format!(
                    "Newton identities give non-integral e_{k} = {ek}"
                )));
            }
            e.push(ek.to_integer());
        }
        let mut coeffs = vec![BigInt::zero(); 2 * g as usize + 1];
        for (k, ek) in e.iter().enumerate() {
            coeffs[k] = if k % 2 == 0 { ek.clone() } else { -ek };
        }
        for i in 0..g {
            coeffs[(2 * g - i) as usize] = pow(q, g - i) * &coeffs[i as usize];
        }
        LPolynomial::from_coeffs(q, g, coeffs)
    }

    /// Checks every structural invariant of an L-polynomial.
    pub fn from_coeffs(q: u64, g: u64, coeffs: Vec<BigInt>) -> Result<LPolynomial> {
        let l = LPolynomial { q, g, coeffs };
        l.validate()?;
        Ok(l)
    }

    fn validate(&self) -> Result<()> {
        let (q, g) = (self.q, self.g);
        let breach = |what: String| Err(Error::Invariant(what));
        if self.coeffs.len() as u64 != 2 * g + 1 {
            return breach(format!("{} coefficients for genus {g}", self.coeffs.len()));
        }
        if !self.coeffs[0].is_one() {
            return breach(format!("c_0 = {} is not 1", self.coeffs[0]));
        }
        for i in 0..=g {
            if self.coeffs[(2 * g - i) as usize] != pow(q, g - i) * &self.coeffs[i as usize] {
                return breach(format!("functional equation fails at c_{}", 2 * g - i));
            }
        }
        if !self.class_number().is_positive() {
            return breach(format!("P(1) = {} is not positive", self.class_number()));
        }
        for (k, a) in self.power_sums(2 * g as usize).iter().enumerate() {
            let k = k as u64 + 1;
            if a * a > BigInt::from(4 * g * g) * pow(q, k) {
                return breach(format!("|a_{k}| = {a} exceeds the Weil bound 2g q^(k/2)"));
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u64 {
        self.g
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `h = P(1)`.
    pub fn class_number(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Whether `c_{2g-i} = q^{g-i} c_i` for every `i`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.g;
        (0..=2 * g).all(|i| {
            let j = 2 * g - i;
            // For i > g the identity reads q^{i-g} c_j = c_i.
            if i <= g {
                self.coeffs[j as usize] == pow(self.q, g - i) * &self.coeffs[i as usize]
            } else {
                pow(self.q, i - g) * &self.coeffs[j as usize] == self.coeffs[i as usize]
            }
        })
    }

    /// `a_1, ..., a_kmax`, the power sums of the reciprocal roots.
    pub fn power_sums(&self, kmax: usize) -> Vec<BigInt> {
        let e = |j: usize| -> BigInt {
            match self.coeffs.get(j) {
                Some(c) if j.is_multiple_of(2) => c.clone(),
                Some(c) => -c,
                None => BigInt::zero(),
            }
        };
        let mut a: Vec<BigInt> = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            let mut acc = e(k) * BigInt::from(k);
            if k % 2 == 0 {
                acc = -acc;
            }
            for j in 1..k {
                let term = e(j) * &a[k - j - 1];
                if j % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            a.push(acc);
        }
        a
    }

    /// Number of degree-one places over `F_{q^k}` implied by `P`.
    pub fn predicted_s(&self, k: u64) -> BigInt {
        let a = self.power_sums(k as usize).pop().expect("k >= 1");
        pow(self.q, k) + 1 - a
    }

    /// `N_1, ..., N_B` implied by `P`, by Möbius inversion of `S_k`.
    pub fn place_counts(&self, bound: u64) -> Vec<BigInt> {
        let a = self.power_sums(bound as usize);
        let s = |d: u64| pow(self.q, d) + 1 - &a[d as usize - 1];
        (1..=bound)
            .map(|m| {
                let total: BigInt = divisors(m)
                    .into_iter()
                    .map(|d| s(d) * mobius(m / d))
                    .sum();
                let (n, r) = total.div_rem(&BigInt::from(m));
                assert!(r.is_zero(), "Möbius inversion must be exact");
                n
            })
            .collect()
    }

    /// `A_0, ..., A_{n_max}`: the coefficients of `Z(u)`, i.e. the numbers
    /// of effective divisors of each degree.
    pub fn divisor_count_series(&self, n_max: usize) -> Result<Vec<BigInt>> {
        // 1 / ((1-u)(1-qu)) = sum_k (q^{k+1} - 1)/(q - 1) u^k
        let geom: Vec<BigInt> = (0..=n_max as u64)
            .map(|k| (pow(self.q, k + 1) - 1) / BigInt::from(self.q - 1))
            .collect();
        let out: Vec<BigInt> = (0..=n_max)
            .map(|n| {
                self.coeffs
                    .iter()
                    .take(n + 1)
                    .enumerate()
                    .map(|(i, c)| c * &geom[n - i])
                    .sum()
            })
            .collect();
        if let Some((n, a)) = out.iter().enumerate().find(|(_, a)| a.is_negative()) {
            return Err(Error::Invariant(format!("A_{n} = {a} is negative")));
        }
        Ok(out)
    }

    /// `P(u)` as an exact rational.
    pub fn eval(&self, u: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * u + BigRational::from_integer(c.clone())
        })
    }

    /// `Z(u) = P(u) / ((1 - u)(1 - q u))` for `0 < u < 1/q`.
    pub fn zeta_eval(&self, u: &BigRational) -> Result<BigRational> {
        let one = BigRational::one();
        let qu = u * BigRational::from_integer(BigInt::from(self.q));
        if !u.is_positive() || qu >= one {
            return Err(Error::Domain(format!(
                "u = {u} is outside the region 0 < u < 1/{}",
                self.q
            )));
        }
        Ok(self.eval(u) / ((&one - u) * (one - qu)))
    }
}

/// An L-polynomial together with the data derived from it.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    pub lpoly: LPolynomial,
    #[serde(with = "decimal")]
    pub h: BigInt,
    /// `N_1, ..., N_B`.
    #[serde(rename = "N", with = "decimal::vec")]
    pub counts: Vec<BigInt>,
    /// `A_0, ..., A_{2g+1}`.
    #[serde(rename = "A", with = "decimal::vec")]
    pub divisor_counts: Vec<BigInt>,
}

impl ZetaReport {
    /// Derives the report from an L-polynomial; `N` runs up to `bound`.
    pub fn new(lpoly: LPolynomial, bound: u64) -> Result<ZetaReport> {
        let g = lpoly.genus() as usize;
        Ok(ZetaReport {
            h: lpoly.class_number(),
            counts: lpoly.place_counts(bound),
            divisor_counts: lpoly.divisor_count_series(2 * g + 1)?,
            lpoly,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn worked_lpolys() {
        let l = LPolynomial::from_counts(2, 1, &[3]).unwrap();
        assert_eq!(l.coeffs(), ints(&[1, 0, 2]));
        assert_eq!(l.class_number(), 3.into());
        let l = LPolynomial::from_counts(3, 1, &[4]).unwrap();
        assert_eq!(l.coeffs(), ints(&[1, 0, 3]));
        assert_eq!(l.class_number(), 4.into());
        let l = LPolynomial::from_counts(5, 0, &[]).unwrap();
        assert_eq!(l.coeffs(), ints(&[1]));
        assert_eq!(l.class_number(), 1.into());
    }

    #[test]
    fn predicted_counts() {
        let l = LPolynomial::from_coeffs(2, 1, ints(&[1, 0, 2])).unwrap();
        assert_eq!(l.power_sums(2), ints(&[0, -4]));
        assert_eq!(l.predicted_s(3), 9.into());
        assert_eq!(l.place_counts(2), ints(&[3, 3]));
        let l = LPolynomial::from_coeffs(3, 1, ints(&[1, 0, 3])).unwrap();
        assert_eq!(l.power_sums(2), ints(&[0, -6]));
        assert_eq!(l.predicted_s(2), 16.into());
        let l = LPolynomial::from_coeffs(7, 0, ints(&[1])).unwrap();
        assert_eq!(l.predicted_s(3), (343 + 1).into());
    }

    #[test]
    fn divisor_series() {
        let l = LPolynomial::from_coeffs(2, 0, ints(&[1])).unwrap();
        let a = l.divisor_count_series(6).unwrap();
        for (n, an) in a.iter().enumerate() {
            assert_eq!(*an, BigInt::from((1i64 << (n + 1)) - 1));
        }
        let l = LPolynomial::from_coeffs(2, 1, ints(&[1, 0, 2])).unwrap();
        assert_eq!(l.divisor_count_series(3).unwrap()[2], 9.into());
        let l = LPolynomial::from_coeffs(3, 1, ints(&[1, 0, 3])).unwrap();
        assert_eq!(l.divisor_count_series(3).unwrap()[2], 16.into());
    }

    #[test]
    fn zeta_values() {
        let l = LPolynomial::from_coeffs(2, 0, ints(&[1])).unwrap();
        assert_eq!(l.zeta_eval(&rat(1, 4)).unwrap(), rat(8, 3));
        let l = LPolynomial::from_coeffs(2, 1, ints(&[1, 0, 2])).unwrap();
        assert_eq!(l.zeta_eval(&rat(1, 4)).unwrap(), rat(3, 1));
        let l = LPolynomial::from_coeffs(3, 1, ints(&[1, 0, 3])).unwrap();
        assert_eq!(l.zeta_eval(&rat(1, 9)).unwrap(), rat(7, 4));
        assert!(l.zeta_eval(&rat(1, 3)).is_err());
        assert!(l.zeta_eval(&rat(0, 1)).is_err());
    }

    #[test]
    fn rejects_inconsistent_input() {
        // Violates the functional equation.
        assert!(LPolynomial::from_coeffs(2, 1, ints(&[1, 0, 3])).is_err());
        // N_1 = 9 over F_2 with genus 1 breaks the Weil bound.
        assert!(LPolynomial::from_counts(2, 1, &[9]).is_err());
        assert!(LPolynomial::from_counts(2, 2, &[3]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let l = LPolynomial::from_coeffs(2, 1, ints(&[1, 0, 2])).unwrap();
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(text, r#"{"q":2,"g":1,"coeffs":["1","0","2"]}"#);
        assert_eq!(serde_json::from_str::<LPolynomial>(&text).unwrap(), l);
        assert!(serde_json::from_str::<LPolynomial>(r#"{"q":2,"g":1,"coeffs":["1","0","3"]}"#).is_err());
    }
}
