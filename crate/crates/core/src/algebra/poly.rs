//! Dense univariate polynomials over a finite field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;

use super::arith;
use super::embed::Embedding;
use super::field::{Elem, Gf};
use crate::error::{Error, Result};

/// A polynomial over `F_q`, coefficients stored constant term first.
///
/// The zero polynomial has no coefficients; otherwise the last stored
/// coefficient is nonzero.
#[derive(Clone)]
pub struct Poly {
    ctx: Gf,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn from_elems(ctx: &Gf, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Coefficients given as integers reduced into the prime subfield.
    pub fn from_ints(ctx: &Gf, coeffs: &[i64]) -> Poly {
        Poly::from_elems(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn zero(ctx: &Gf) -> Poly {
        Poly::from_elems(ctx, Vec::new())
    }

    pub fn one(ctx: &Gf) -> Poly {
        Poly::constant(ctx, Elem::ONE)
    }

    pub fn constant(ctx: &Gf, c: Elem) -> Poly {
        Poly::from_elems(ctx, vec![c])
    }

    pub fn x(ctx: &Gf) -> Poly {
        Poly::monomial(ctx, Elem::ONE, 1)
    }

    pub fn monomial(ctx: &Gf, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_elems(ctx, coeffs)
    }

    pub fn parse(ctx: &Gf, text: &str) -> Result<Poly> {
        super::text::parse_poly(ctx, text)
    }

    pub fn ctx(&self) -> &Gf {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem::ONE)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ctx.inv(lc).expect("leading coefficient is nonzero");
                self.scale(inv)
            }
        }
    }

    fn check_ctx(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx),
            "polynomials over different fields ({} vs {})",
            self.ctx,
            other.ctx
        );
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let ctx = &self.ctx;
        Poly::from_elems(ctx, self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn derivative(&self) -> Poly {
        let ctx = &self.ctx;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ctx.scale(c, i as u64 % ctx.characteristic()))
            .collect();
        Poly::from_elems(ctx, coeffs)
    }

    /// Euclidean division. Fails on a zero divisor.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_ctx(d);
        let ctx = &self.ctx;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Poly::zero(ctx), self.clone()));
        };
        let inv_lc = ctx.inv(d.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let c = ctx.mul(c, inv_lc);
            quot[k] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                rem[k + i] = ctx.sub(rem[k + i], ctx.mul(c, di));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_elems(ctx, quot), Poly::from_elems(ctx, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divmod(d)?.1)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_ctx(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Horner evaluation at a point of the coefficient field.
    pub fn eval(&self, x: Elem) -> Elem {
        let ctx = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// Image of this polynomial under a coefficient embedding.
    pub fn map_coeffs(&self, emb: &Embedding) -> Poly {
        assert!(Arc::ptr_eq(&self.ctx, emb.source()));
        Poly::from_elems(
            emb.target(),
            self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        )
    }

    /// Evaluation at a point of an extension field through `emb`.
    pub fn eval_in(&self, emb: &Embedding, x: Elem) -> Elem {
        self.map_coeffs(emb).eval(x)
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m).expect("nonzero modulus")
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Poly::one(&self.ctx).rem(m).expect("nonzero modulus");
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
            if i + 1 < e.bits() {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn powmod_u64(&self, e: u64, m: &Poly) -> Poly {
        self.powmod(&BigUint::from(e), m)
    }

    /// `self^q mod m` where `q` is the order of the coefficient field.
    pub fn frobenius_mod(&self, m: &Poly) -> Poly {
        self.powmod_u64(self.ctx.order(), m)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^{q^n} = x mod f`
    /// and `gcd(x^{q^{n/r}} - x, f) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            Some(n) if n >= 1 && self.is_monic() => n,
            _ => {
                return Err(Error::Domain(
                    "irreducibility test needs a monic nonconstant polynomial".into(),
                ))
            }
        };
        if n == 1 {
            return Ok(true);
        }
        let x = Poly::x(&self.ctx).rem(self)?;
        let maximal: Vec<usize> = arith::prime_divisors(n as u64)
            .into_iter()
            .map(|r| n / r as usize)
            .collect();
        let mut h = x.clone();
        for k in 1..=n {
            h = h.frobenius_mod(self);
            if maximal.contains(&k) && !self.gcd(&(&h - &x)).is_constant() {
                return Ok(false);
            }
        }
        Ok(h == x)
    }

    /// Number of times the monic irreducible `p` divides `self` (nonzero).
    pub fn valuation(&self, p: &Poly) -> Result<(u32, Poly)> {
        if self.is_zero() {
            return Err(Error::Domain("valuation of the zero polynomial".into()));
        }
        let mut v = 0;
        let mut rest = self.clone();
        loop {
            let (q, r) = rest.divmod(p)?;
            if !r.is_zero() {
                return Ok((v, rest));
            }
            v += 1;
            rest = q;
        }
    }

    /// Position of a monic polynomial in the canonical order among monic
    /// polynomials of its degree: `sum_i index(c_i) q^i` over `i < deg`.
    pub fn canonical_index(&self) -> u128 {
        let q = self.ctx.order() as u128;
        let d = self.degree().unwrap_or(0);
        self.coeffs[..d]
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * q + self.ctx.index(c) as u128)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then the canonical coefficient order.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {})", self.ctx)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ctx(rhs);
        let ctx = &self.ctx;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_elems(
            ctx,
            (0..len).map(|i| ctx.add(self.coeff(i), rhs.coeff(i))).collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ctx(rhs);
        let ctx = &self.ctx;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_elems(
            ctx,
            (0..len).map(|i| ctx.sub(self.coeff(i), rhs.coeff(i))).collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let ctx = &self.ctx;
        Poly::from_elems(ctx, self.coeffs.iter().map(|&c| ctx.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ctx(rhs);
        let ctx = &self.ctx;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(ctx);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::from_elems(ctx, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u64, s: &str) -> Poly {
        let ctx = crate::algebra::field::field_of_order(q).unwrap();
        Poly::parse(&ctx, s).unwrap()
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f = p(5, "2*x^2+1");
        assert_eq!(f.gcd(&Poly::zero(f.ctx())), f.monic());
        assert!(f.gcd(&Poly::zero(f.ctx())).is_monic());
    }

    #[test]
    fn frobenius_square_over_f2() {
        let f = p(2, "x+1");
        assert_eq!(&f * &f, p(2, "x^2+1"));
    }

    #[test]
    fn coprime_over_f3() {
        assert_eq!(p(3, "x^3-x").gcd(&p(3, "x^2+1")), p(3, "1"));
    }

    #[test]
    fn divmod_reconstructs() {
        let a = p(7, "3*x^5+x^3+6*x+2");
        let b = p(7, "2*x^2+5");
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
        assert!(matches!(a.divmod(&Poly::zero(a.ctx())), Err(Error::DivisionByZero)));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(p(2, "x").is_irreducible().unwrap());
        assert!(p(2, "x^2+x+1").is_irreducible().unwrap());
        assert!(!p(2, "x^2+1").is_irreducible().unwrap());
        assert!(p(2, "1").is_irreducible().is_err());
        assert!(p(3, "2*x^2+1").is_irreducible().is_err());
    }

    #[test]
    fn derivative_in_characteristic() {
        assert_eq!(p(3, "x^3+2*x^2+x").derivative(), p(3, "x+1"));
    }

    #[test]
    fn valuation_counts_repeated_factors() {
        let f = p(3, "x^4+x^2");
        let (v, rest) = f.valuation(&p(3, "x")).unwrap();
        assert_eq!(v, 2);
        assert_eq!(rest, p(3, "x^2+1"));
    }

    /// Trial division by every monic polynomial of degree up to half.
    fn irreducible_by_trial_division(f: &Poly) -> bool {
        let ctx = f.ctx();
        let n = f.degree().unwrap();
        let q = ctx.order();
        for d in 1..=n / 2 {
            for idx in 0..q.pow(d as u32) {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut rest = idx;
                for _ in 0..d {
                    coeffs.push(ctx.from_index(rest % q));
                    rest /= q;
                }
                coeffs.push(Elem::ONE);
                if f.rem(&Poly::from_elems(ctx, coeffs)).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for (q, max_deg) in [(2u64, 6usize), (3, 4), (4, 3), (5, 3)] {
            let ctx = crate::algebra::field::field_of_order(q).unwrap();
            for d in 1..=max_deg {
                for idx in 0..q.pow(d as u32) {
                    let mut coeffs = Vec::new();
                    let mut rest = idx;
                    for _ in 0..d {
                        coeffs.push(ctx.from_index(rest % q));
                        rest /= q;
                    }
                    coeffs.push(Elem::ONE);
                    let f = Poly::from_elems(&ctx, coeffs);
                    assert_eq!(
                        f.is_irreducible().unwrap(),
                        irreducible_by_trial_division(&f),
                        "{f} over F_{q}"
                    );
                }
            }
        }
    }
}
