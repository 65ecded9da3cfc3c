//! Text form of polynomials: a sparse sum of terms `c*x^k`, e.g. `x^3+2*x`.
//!
//! Integer coefficients are reduced mod `p`. Over a non-prime field a
//! coefficient may also be written as a parenthesized polynomial in the
//! field generator `t`, e.g. `(t+1)*x^2+x`. Whitespace is ignored; anything
//! else outside the grammar is an error.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::field::{Elem, FieldCtx, Gf};
use super::poly::Poly;
use crate::error::{Error, Result};

fn poly_in(var: char, terms: &[(String, usize)]) -> String {
    let mut out = String::new();
    for (c, k) in terms {
        if !out.is_empty() {
            out.push('+');
        }
        match (c.as_str(), *k) {
            (c, 0) => out.push_str(c),
            ("1", 1) => out.push(var),
            ("1", k) => out.push_str(&format!("{var}^{k}")),
            (c, 1) => out.push_str(&format!("{c}*{var}")),
            (c, k) => out.push_str(&format!("{c}*{var}^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Formats a field element: an integer for prime-subfield elements,
/// otherwise a parenthesized polynomial in `t`.
pub fn format_elem(ctx: &FieldCtx, e: Elem) -> String {
    let digits = ctx.digits(e);
    if digits.iter().skip(1).all(|&d| d == 0) {
        return digits[0].to_string();
    }
    let terms: Vec<(String, usize)> = digits
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(i, d)| (d.to_string(), i))
        .collect();
    format!("({})", poly_in('t', &terms))
}

pub fn format_poly(f: &Poly) -> String {
    let ctx = f.ctx();
    let terms: Vec<(String, usize)> = f
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| (format_elem(ctx, c), i))
        .collect();
    poly_in('x', &terms)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        )))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<BigUint> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        BigUint::parse_bytes(&self.src[start..self.pos], 10)
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        match self.number().and_then(|n| n.to_usize()) {
            Some(k) => Ok(k),
            None => self.err("expected an exponent"),
        }
    }

    /// Parses `term ((+|-) term)*` in the variable `var`. Coefficients are
    /// produced by `coef`, which sees the parser positioned at a coefficient.
    fn sum<C>(
        &mut self,
        var: u8,
        mut coef: impl FnMut(&mut Self) -> Result<Option<C>>,
    ) -> Result<Vec<(bool, Option<C>, usize)>> {
        let mut terms = Vec::new();
        let mut negative = self.eat(b'-');
        loop {
            let c = coef(self)?;
            let k = if c.is_some() {
                if self.eat(b'*') {
                    if !self.eat(var) {
                        return self.err(&format!("expected '{}' after '*'", var as char));
                    }
                    self.exponent()?
                } else {
                    0
                }
            } else if self.eat(var) {
                self.exponent()?
            } else {
                return self.err("expected a term");
            };
            terms.push((negative, c, k));
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }
}

fn reduce(n: &BigUint, p: u64) -> u64 {
    (n % BigUint::from(p)).to_u64().expect("residue fits")
}

fn parse_generator_poly(ctx: &FieldCtx, parser: &mut Parser<'_>) -> Result<Elem> {
    let p = ctx.characteristic();
    let terms = parser.sum(b't', |ps| Ok(ps.number()))?;
    let mut digits = vec![0u64; ctx.degree() as usize];
    for (neg, c, k) in terms {
        if k >= digits.len() {
            return parser.err("power of t not below the field degree");
        }
        let c = c.map(|c| reduce(&c, p)).unwrap_or(1);
        let c = if neg { (p - c) % p } else { c };
        digits[k] = (digits[k] + c) % p;
    }
    Ok(ctx.from_digits(&digits))
}

/// Parses a polynomial over `ctx` from its text form.
pub fn parse_poly(ctx: &Gf, text: &str) -> Result<Poly> {
    let cleaned: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut parser = Parser {
        src: &cleaned,
        pos: 0,
    };
    let p = ctx.characteristic();
    let terms = parser.sum(b'x', |ps| {
        if let Some(n) = ps.number() {
            return Ok(Some(ctx.from_digits(&[reduce(&n, p)])));
        }
        if ps.eat(b'(') {
            if ctx.is_prime_field() {
                return ps.err("parenthesized coefficients need a non-prime field");
            }
            let e = parse_generator_poly(ctx, ps)?;
            if !ps.eat(b')') {
                return ps.err("expected ')'");
            }
            return Ok(Some(e));
        }
        Ok(None)
    })?;
    if parser.pos != cleaned.len() {
        return parser.err("unexpected trailing input");
    }
    let top = terms.iter().map(|t| t.2).max().unwrap_or(0);
    let mut coeffs = vec![Elem::ZERO; top + 1];
    for (neg, c, k) in terms {
        let c = c.unwrap_or(Elem::ONE);
        let c = if neg { ctx.neg(c) } else { c };
        coeffs[k] = ctx.add(coeffs[k], c);
    }
    Ok(Poly::from_elems(ctx, coeffs))
}
