//! Finite fields `F_{p^n}` in a packed coefficient representation.
//!
//! An element `c_0 + c_1 t + ... + c_{n-1} t^{n-1}` of `F_p[t]/(modulus)` is
//! stored in a single `u64`. For `p = 2` each coefficient is one bit, for
//! `n = 1` the word is the residue itself, and otherwise every coefficient
//! occupies a fixed-width lane with a guard bit so that additions can be
//! carried out lane-parallel. In all three layouts the integer order of the
//! packed words agrees with the canonical order of coefficient vectors read
//! as base-`p` integers with the constant term as the least significant digit.
//!
//! Fields with at most [`TABLE_LIMIT`] elements carry discrete log / antilog
//! tables, which turn multiplication and exponentiation into lookups.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::arith;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest field order for which log tables are built.
pub const TABLE_LIMIT: u64 = 1 << 22;

/// Largest supported field order (elements are indexed by `u32`).
pub const MAX_ORDER: u64 = u32::MAX as u64;

/// Shared handle to a canonical field context.
pub type Gf = Arc<FieldCtx>;

/// A raw field element. Only meaningful together with its [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug)]
enum Repr {
    Binary,
    Prime,
    Lanes {
        width: u32,
        mask: u64,
        p_all: u64,
        bias: u64,
        high: u64,
    },
}

struct Tables {
    /// Indexed by the dense element index; `log[0]` is unused.
    log: Vec<u32>,
    /// `exp[i]` is the packed form of `gen^i`, `0 <= i < q - 1`.
    exp: Vec<u64>,
}

/// The field `F_{p^n}` with its canonical defining polynomial.
pub struct FieldCtx {
    p: u64,
    n: u32,
    order: u64,
    modulus: Vec<u64>,
    repr: Repr,
    tables: Option<Tables>,
    trace_of_basis: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order)
    }
}

type Registry = Mutex<HashMap<(u64, u32), Arc<OnceLock<Gf>>>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

/// Returns the canonical context for `F_{p^n}`.
///
/// Contexts are memoized: two calls with the same `(p, n)` return the same
/// `Arc`. Construction of distinct fields may proceed concurrently.
pub fn field_ctx(p: u64, n: u32) -> Result<Gf> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Domain("extension degree must be at least 1".into()));
    }
    let order = p
        .checked_pow(n)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or(Error::FieldTooLarge { p, n })?;
    let repr = repr_for(p, n).ok_or(Error::FieldTooLarge { p, n })?;
    let cell = {
        let mut map = registry().lock().expect("field registry poisoned");
        map.entry((p, n)).or_default().clone()
    };
    Ok(cell
        .get_or_init(|| Arc::new(FieldCtx::build(p, n, order, repr)))
        .clone())
}

/// Context for the field with `q` elements, `q` a prime power.
pub fn field_of_order(q: u64) -> Result<Gf> {
    let (p, n) = arith::prime_power(q)
        .ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
    field_ctx(p, n)
}

fn repr_for(p: u64, n: u32) -> Option<Repr> {
    if p == 2 {
        return Some(Repr::Binary);
    }
    if n == 1 {
        return Some(Repr::Prime);
    }
    let width = 64 - (2 * p - 1).leading_zeros() + 1;
    if (n as u64) * (width as u64) > 64 {
        return None;
    }
    let mut p_all = 0u64;
    let mut bias = 0u64;
    let mut high = 0u64;
    for i in 0..n {
        let s = i * width;
        p_all |= p << s;
        bias |= ((1u64 << (width - 1)) - p) << s;
        high |= 1u64 << (s + width - 1);
    }
    Some(Repr::Lanes {
        width,
        mask: (1u64 << width) - 1,
        p_all,
        bias,
        high,
    })
}

impl FieldCtx {
    fn build(p: u64, n: u32, order: u64, repr: Repr) -> FieldCtx {
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            canonical_modulus(p, n)
        };
        let mut ctx = FieldCtx {
            p,
            n,
            order,
            modulus,
            repr,
            tables: None,
            trace_of_basis: Vec::new(),
        };
        if order <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx.trace_of_basis = (0..n)
            .map(|i| {
                let mut basis = vec![0u64; n as usize];
                basis[i as usize] = 1;
                let tr = ctx.trace_naive(ctx.from_digits(&basis));
                debug_assert!(tr.0 < p, "trace must land in the prime field");
                tr.0
            })
            .collect();
        ctx
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Number of elements `q = p^n`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.n == 1
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Coefficients `c_0..c_n` of the defining polynomial over `F_p`.
    pub fn modulus_digits(&self) -> &[u64] {
        &self.modulus
    }

    /// The defining polynomial as an element of `F_p[x]`.
    pub fn modulus_poly(&self) -> Poly {
        let prime = field_ctx(self.p, 1).expect("prime field of an existing field");
        let coeffs = self.modulus.iter().map(|&c| Elem(c)).collect();
        Poly::from_elems(&prime, coeffs)
    }

    /// The class of `t`, the generator over the prime field.
    pub fn generator(&self) -> Elem {
        if self.n == 1 {
            Elem::ZERO
        } else {
            self.from_digits(&[0, 1])
        }
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn digit(&self, a: Elem, i: u32) -> u64 {
        debug_assert!(i < self.n);
        match self.repr {
            Repr::Binary => (a.0 >> i) & 1,
            Repr::Prime => a.0,
            Repr::Lanes { width, mask, .. } => (a.0 >> (i * width)) & mask,
        }
    }

    /// Coefficient vector over `F_p`, constant term first, length `n`.
    pub fn digits(&self, a: Elem) -> Vec<u64> {
        (0..self.n).map(|i| self.digit(a, i)).collect()
    }

    /// Builds an element from coefficients over `F_p` (reduced mod `p`).
    /// Missing high coefficients are zero; extra ones are ignored.
    pub fn from_digits(&self, digits: &[u64]) -> Elem {
        let mut v = 0u64;
        for (i, &d) in digits.iter().enumerate().take(self.n as usize) {
            let d = d % self.p;
            v |= match self.repr {
                Repr::Binary => d << i,
                Repr::Prime => d,
                Repr::Lanes { width, .. } => d << (i as u32 * width),
            };
        }
        Elem(v)
    }

    /// Dense index `sum c_i p^i` in `[0, q)`.
    pub fn index(&self, a: Elem) -> u64 {
        match self.repr {
            Repr::Binary | Repr::Prime => a.0,
            Repr::Lanes { width, mask, .. } => {
                let mut idx = 0u64;
                for i in (0..self.n).rev() {
                    idx = idx * self.p + ((a.0 >> (i * width)) & mask);
                }
                idx
            }
        }
    }

    pub fn from_index(&self, mut idx: u64) -> Elem {
        debug_assert!(idx < self.order);
        match self.repr {
            Repr::Binary | Repr::Prime => Elem(idx),
            Repr::Lanes { width, .. } => {
                let mut v = 0u64;
                for i in 0..self.n {
                    v |= (idx % self.p) << (i * width);
                    idx /= self.p;
                }
                Elem(v)
            }
        }
    }

    /// Next element in canonical order (wraps to zero after the last one).
    pub fn successor(&self, a: Elem) -> Elem {
        match self.repr {
            Repr::Binary => Elem((a.0 + 1) & (self.order - 1)),
            Repr::Prime => Elem(if a.0 + 1 == self.p { 0 } else { a.0 + 1 }),
            Repr::Lanes { width, mask, .. } => {
                let mut v = a.0 + 1;
                for i in 0..self.n {
                    let s = i * width;
                    if (v >> s) & mask == self.p {
                        v -= self.p << s;
                        if i + 1 < self.n {
                            v += 1 << (s + width);
                        }
                    } else {
                        break;
                    }
                }
                Elem(v)
            }
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> ElemIter<'_> {
        self.elements_from(0, self.order)
    }

    /// `len` consecutive elements starting at dense index `start`.
    pub fn elements_from(&self, start: u64, len: u64) -> ElemIter<'_> {
        let len = len.min(self.order.saturating_sub(start));
        ElemIter {
            ctx: self,
            next: if len > 0 { self.from_index(start) } else { Elem::ZERO },
            remaining: len,
        }
    }

    #[inline]
    fn reduce_lanes(&self, s: u64) -> u64 {
        match self.repr {
            Repr::Lanes {
                width, bias, high, ..
            } => {
                let over = ((s + bias) & high) >> (width - 1);
                s - over * self.p
            }
            _ => unreachable!(),
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self.repr {
            Repr::Binary => Elem(a.0 ^ b.0),
            Repr::Prime => {
                let s = a.0 + b.0;
                Elem(if s >= self.p { s - self.p } else { s })
            }
            Repr::Lanes { .. } => Elem(self.reduce_lanes(a.0 + b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match self.repr {
            Repr::Binary => a,
            Repr::Prime => Elem(if a.0 == 0 { 0 } else { self.p - a.0 }),
            Repr::Lanes { p_all, .. } => Elem(self.reduce_lanes(p_all - a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        match self.repr {
            Repr::Binary => Elem(a.0 ^ b.0),
            Repr::Prime => Elem(if a.0 >= b.0 {
                a.0 - b.0
            } else {
                a.0 + self.p - b.0
            }),
            Repr::Lanes { p_all, .. } => Elem(self.reduce_lanes(a.0 + p_all - b.0)),
        }
    }

    /// Multiplies by an element of the prime field given as an integer in `[0, p)`.
    pub fn scale(&self, a: Elem, c: u64) -> Elem {
        self.mul(a, Elem(c % self.p))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if let Repr::Prime = self.repr {
            return Elem(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64);
        }
        match &self.tables {
            Some(t) => {
                let q1 = self.order - 1;
                let mut s = t.log[self.index(a) as usize] as u64 + t.log[self.index(b) as usize] as u64;
                if s >= q1 {
                    s -= q1;
                }
                Elem(t.exp[s as usize])
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let n = self.n as usize;
        match self.repr {
            Repr::Prime => Elem(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64),
            Repr::Binary => {
                let mut r: u64 = 0;
                for i in 0..n {
                    if (b.0 >> i) & 1 == 1 {
                        r ^= a.0 << i;
                    }
                }
                let m: u64 = self
                    .modulus
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (i, &c)| acc | (c << i));
                for k in (n..2 * n - 1).rev() {
                    if (r >> k) & 1 == 1 {
                        r ^= m << (k - n);
                    }
                }
                Elem(r)
            }
            Repr::Lanes { .. } => {
                let p = self.p;
                let da = self.digits(a);
                let db = self.digits(b);
                let mut prod = vec![0u64; 2 * n - 1];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (n..2 * n - 1).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    for i in 0..n {
                        prod[k - n + i] = (prod[k - n + i] + (p - self.modulus[i]) * c) % p;
                    }
                    prod[k] = 0;
                }
                self.from_digits(&prod[..n])
            }
        }
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a machine-size exponent.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let q1 = self.order - 1;
        match &self.tables {
            Some(t) => {
                let l = t.log[self.index(a) as usize] as u128 * (e % q1) as u128 % q1 as u128;
                Elem(t.exp[l as usize])
            }
            _ => {
                let mut base = a;
                let mut acc = Elem::ONE;
                let mut e = e % q1;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul(acc, base);
                    }
                    base = self.mul(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// `a^e` for an arbitrary nonnegative exponent.
    pub fn pow_big(&self, a: Elem, e: &BigUint) -> Elem {
        if e.bits() == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let reduced = (e % BigUint::from(self.order - 1))
            .to_u64()
            .expect("reduced exponent fits");
        self.pow(a, reduced)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p)
    }

    /// Absolute trace `sum_{i<n} a^{p^i}` as an integer in `[0, p)`, computed
    /// through the traces of the power basis.
    pub fn trace(&self, a: Elem) -> u64 {
        let mut acc: u128 = 0;
        for (i, &tr) in self.trace_of_basis.iter().enumerate() {
            if tr != 0 {
                acc += self.digit(a, i as u32) as u128 * tr as u128;
            }
        }
        (acc % self.p as u128) as u64
    }

    /// Absolute trace by the defining sum of Frobenius conjugates.
    pub fn trace_naive(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut conj = a;
        for _ in 0..self.n {
            acc = self.add(acc, conj);
            conj = self.frobenius(conj);
        }
        acc
    }

    /// Whether `a` lies in the subfield with `p^k` elements (`k | n`).
    pub fn in_subfield(&self, a: Elem, k: u32) -> bool {
        debug_assert_eq!(self.n % k, 0);
        if k == self.n {
            return true;
        }
        if a.is_zero() {
            return true;
        }
        match &self.tables {
            Some(t) => {
                let sub = self.p.pow(k) - 1;
                let stride = (self.order - 1) / sub;
                (t.log[self.index(a) as usize] as u64).is_multiple_of(stride)
            }
            _ => self.pow(a, self.p.pow(k)) == a,
        }
    }

    fn build_tables(&self) -> Tables {
        let q1 = self.order - 1;
        let primes = arith::prime_divisors(q1);
        let gen = (1..self.order)
            .map(|i| self.from_index(i))
            .find(|&g| primes.iter().all(|&r| self.pow_slow(g, q1 / r) != Elem::ONE))
            .expect("multiplicative group is cyclic");
        let step = MulBy::new(self, gen);
        let mut log = vec![0u32; self.order as usize];
        let mut exp = Vec::with_capacity(q1 as usize);
        let mut cur = Elem::ONE;
        for i in 0..q1 {
            exp.push(cur.0);
            log[self.index(cur) as usize] = i as u32;
            cur = step.apply(self, cur);
        }
        debug_assert_eq!(cur, Elem::ONE);
        Tables { log, exp }
    }
}

/// Multiplication by a fixed element as an `F_p`-linear map.
enum MulBy {
    Scalar(u64),
    Columns(Vec<u64>),
    Multiples(Vec<Vec<u64>>),
}

impl MulBy {
    fn new(ctx: &FieldCtx, g: Elem) -> MulBy {
        let n = ctx.n as usize;
        let column = |i: usize| {
            let mut d = vec![0u64; n];
            d[i] = 1;
            ctx.mul_slow(g, ctx.from_digits(&d))
        };
        match ctx.repr {
            Repr::Prime => MulBy::Scalar(g.0),
            Repr::Binary => MulBy::Columns((0..n).map(|i| column(i).0).collect()),
            Repr::Lanes { .. } => MulBy::Multiples(
                (0..n)
                    .map(|i| {
                        let col = column(i);
                        let mut row = Vec::with_capacity(ctx.p as usize);
                        let mut acc = Elem::ZERO;
                        for _ in 0..ctx.p {
                            row.push(acc.0);
                            acc = ctx.add(acc, col);
                        }
                        row
                    })
                    .collect(),
            ),
        }
    }

    fn apply(&self, ctx: &FieldCtx, a: Elem) -> Elem {
        match self {
            MulBy::Scalar(g) => Elem(((a.0 as u128 * *g as u128) % ctx.p as u128) as u64),
            MulBy::Columns(cols) => {
                let mut r = 0;
                for (i, c) in cols.iter().enumerate() {
                    if (a.0 >> i) & 1 == 1 {
                        r ^= c;
                    }
                }
                Elem(r)
            }
            MulBy::Multiples(rows) => {
                let mut r = Elem::ZERO;
                for (i, row) in rows.iter().enumerate() {
                    r = ctx.add(r, Elem(row[ctx.digit(a, i as u32) as usize]));
                }
                r
            }
        }
    }
}

/// First monic irreducible of degree `n` over `F_p` in canonical order.
fn canonical_modulus(p: u64, n: u32) -> Vec<u64> {
    let prime = field_ctx(p, 1).expect("prime field");
    let count = p.pow(n);
    for idx in 0..count {
        let mut digits = Vec::with_capacity(n as usize + 1);
        let mut rest = idx;
        for _ in 0..n {
            digits.push(rest % p);
            rest /= p;
        }
        digits.push(1);
        let candidate = Poly::from_elems(&prime, digits.iter().map(|&d| Elem(d)).collect());
        if candidate.is_irreducible().unwrap_or(false) {
            return digits;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Iterator over a contiguous range of field elements in canonical order.
pub struct ElemIter<'a> {
    ctx: &'a FieldCtx,
    next: Elem,
    remaining: u64,
}

impl Iterator for ElemIter<'_> {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.next;
        self.remaining -= 1;
        if self.remaining > 0 {
            self.next = self.ctx.successor(out);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

/// A field element bundled with its context.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Gf,
    value: Elem,
}

impl FieldElement {
    pub fn new(ctx: &Gf, value: Elem) -> Self {
        FieldElement {
            ctx: ctx.clone(),
            value,
        }
    }

    pub fn from_int(ctx: &Gf, v: i64) -> Self {
        Self::new(ctx, ctx.from_int(v))
    }

    pub fn from_digits(ctx: &Gf, digits: &[u64]) -> Self {
        Self::new(ctx, ctx.from_digits(digits))
    }

    pub fn zero(ctx: &Gf) -> Self {
        Self::new(ctx, Elem::ZERO)
    }

    pub fn one(ctx: &Gf) -> Self {
        Self::new(ctx, Elem::ONE)
    }

    pub fn generator(ctx: &Gf) -> Self {
        Self::new(ctx, ctx.generator())
    }

    pub fn ctx(&self) -> &Gf {
        &self.ctx
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn digits(&self) -> Vec<u64> {
        self.ctx.digits(self.value)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.order,
                right: other.ctx.order,
            })
        }
    }

    fn with(&self, value: Elem) -> Self {
        Self::new(&self.ctx, value)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(self.ctx.add(self.value, rhs.value)))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(self.ctx.sub(self.value, rhs.value)))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(self.ctx.mul(self.value, rhs.value)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(self.ctx.div(self.value, rhs.value)?))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.ctx.inv(self.value)?))
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        self.with(self.ctx.pow_big(self.value, e))
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        self.with(self.ctx.pow(self.value, e))
    }

    pub fn frobenius(&self) -> Self {
        self.with(self.ctx.frobenius(self.value))
    }

    /// `sum_{i<n} a^{p^i}`, returned as an element of the prime field.
    pub fn trace_to_prime(&self) -> FieldElement {
        let prime = field_ctx(self.ctx.p, 1).expect("prime field");
        FieldElement::new(&prime, Elem(self.ctx.trace(self.value)))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ctx)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_elem(&self.ctx, self.value))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from different fields")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.ctx.neg(self.value))
    }
}

/// Least `j >= 1` with `u0^((Q^j - 1)/r) = 1`, where `Q = |F|` is the order
/// of the field holding `u0`.
///
/// When `r | Q - 1` this is the common degree of the irreducible factors of
/// `T^r - u0` over `F`, and it always divides `r`.
pub fn rth_power_residue_degree(u0: &FieldElement, r: u64) -> Result<u64> {
    residue_degree(&u0.ctx, u0.value, r)
}

pub(crate) fn residue_degree(ctx: &FieldCtx, u0: Elem, r: u64) -> Result<u64> {
    if r == 0 || !(ctx.order - 1).is_multiple_of(r) {
        return Err(Error::Domain(format!(
            "{r} does not divide the order of the multiplicative group of F_{}",
            ctx.order
        )));
    }
    if u0.is_zero() {
        return Err(Error::Domain("residue of a zero element".into()));
    }
    // u0^((Q^j-1)/r) = z^j with z = u0^((Q-1)/r) in mu_r.
    let z = ctx.pow(u0, (ctx.order - 1) / r);
    Ok(arith::divisors(r)
        .into_iter()
        .find(|&d| ctx.pow(z, d) == Elem::ONE)
        .expect("z^r = 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, n: u32) -> Gf {
        field_ctx(p, n).unwrap()
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(gf(2, 1).modulus_digits(), &[0, 1]);
        assert_eq!(gf(2, 2).modulus_digits(), &[1, 1, 1]);
        assert_eq!(gf(3, 2).modulus_digits(), &[1, 0, 1]);
        assert_eq!(gf(2, 3).modulus_digits(), &[1, 1, 0, 1]);
    }

    #[test]
    fn contexts_are_memoized() {
        assert!(Arc::ptr_eq(&gf(5, 2), &gf(5, 2)));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(field_ctx(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(field_ctx(2, 40), Err(Error::FieldTooLarge { .. })));
        assert!(field_ctx(3, 0).is_err());
    }

    #[test]
    fn f4_generator_relations() {
        let f4 = gf(2, 2);
        let w = FieldElement::generator(&f4);
        let one = FieldElement::one(&f4);
        assert_eq!(&w * &w, &w + &one);
        assert_eq!(w.pow_u64(3), one);
        assert_eq!(one.inv().unwrap(), one);
    }

    #[test]
    fn trace_examples_in_f4() {
        let f4 = gf(2, 2);
        let w = FieldElement::generator(&f4);
        assert_eq!(w.trace_to_prime().value(), Elem(1));
        assert_eq!(FieldElement::one(&f4).trace_to_prime().value(), Elem(0));
        assert_eq!(FieldElement::zero(&f4).trace_to_prime().value(), Elem(0));
    }

    #[test]
    fn context_mismatch_and_zero_division() {
        let a = FieldElement::one(&gf(3, 1));
        let b = FieldElement::one(&gf(5, 1));
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch { .. })));
        assert!(matches!(
            a.checked_div(&FieldElement::zero(&gf(3, 1))),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn table_and_schoolbook_multiplication_agree() {
        for (p, n) in [(2, 5), (3, 3), (5, 2), (7, 2), (3, 1)] {
            let ctx = gf(p, n);
            assert!(ctx.has_tables());
            for a in ctx.elements() {
                for b in ctx.elements().step_by(3) {
                    assert_eq!(ctx.mul(a, b), ctx.mul_slow(a, b), "F_{p}^{n}");
                }
            }
        }
    }

    #[test]
    fn lane_addition_matches_digitwise() {
        let ctx = gf(5, 3);
        for a in ctx.elements().step_by(7) {
            for b in ctx.elements().step_by(11) {
                let da = ctx.digits(a);
                let db = ctx.digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % 5).collect();
                let diff: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + 5 - y) % 5).collect();
                assert_eq!(ctx.digits(ctx.add(a, b)), sum);
                assert_eq!(ctx.digits(ctx.sub(a, b)), diff);
            }
        }
    }

    #[test]
    fn successor_walks_canonical_order() {
        for (p, n) in [(2, 4), (3, 3), (7, 1), (5, 2)] {
            let ctx = gf(p, n);
            for (i, e) in ctx.elements().enumerate() {
                assert_eq!(ctx.index(e), i as u64);
                assert_eq!(ctx.from_index(i as u64), e);
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_field() {
        for (p, n) in [(2, 8), (3, 5), (5, 3), (2, 1), (7, 2)] {
            let ctx = gf(p, n);
            let mut fixed = 0;
            for a in ctx.elements() {
                let fa = ctx.frobenius(a);
                if fa == a {
                    fixed += 1;
                    assert!(ctx.index(a) < p);
                }
                let b = ctx.from_index((ctx.index(a) * 7 + 3) % ctx.order());
                assert_eq!(ctx.frobenius(ctx.add(a, b)), ctx.add(fa, ctx.frobenius(b)));
            }
            assert_eq!(fixed, p);
        }
    }

    #[test]
    fn fast_trace_matches_definition() {
        for (p, n) in [(2, 6), (3, 4), (5, 2)] {
            let ctx = gf(p, n);
            for a in ctx.elements() {
                assert_eq!(Elem(ctx.trace(a)), ctx.trace_naive(a));
            }
        }
    }

    #[test]
    fn untabled_field_arithmetic() {
        // 2^23 elements: above the table limit.
        let ctx = gf(2, 23);
        assert!(!ctx.has_tables());
        let t = ctx.generator();
        let a = ctx.add(ctx.pow(t, 17), Elem::ONE);
        let inv = ctx.inv(a).unwrap();
        assert_eq!(ctx.mul(a, inv), Elem::ONE);
        assert_eq!(ctx.pow(a, ctx.order() - 1), Elem::ONE);
    }

    #[test]
    fn residue_degree_examples() {
        let f9 = gf(3, 2);
        let t = FieldElement::generator(&f9);
        assert_eq!(rth_power_residue_degree(&t, 2).unwrap(), 1);
        let f3 = gf(3, 1);
        assert_eq!(rth_power_residue_degree(&FieldElement::from_int(&f3, 2), 2).unwrap(), 2);
        assert_eq!(rth_power_residue_degree(&FieldElement::from_int(&f3, 2), 1).unwrap(), 1);
        assert!(rth_power_residue_degree(&FieldElement::zero(&f3), 2).is_err());
        assert!(rth_power_residue_degree(&FieldElement::one(&f3), 3).is_err());
    }
}
