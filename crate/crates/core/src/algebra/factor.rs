//! Root finding and factorization of squarefree polynomials
//! (distinct-degree splitting followed by Cantor–Zassenhaus).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::embed::embedding;
use super::field::{Elem, Gf};
use super::poly::Poly;
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0x5eed_ab31;

/// Roots of `f` in the extension `target` of its coefficient field,
/// sorted in canonical order.
pub fn roots_in(f: &Poly, target: &Gf) -> Result<Vec<Elem>> {
    let g = f.map_coeffs(&*embedding(f.ctx(), target)?);
    roots(&g)
}

/// Roots of `f` in its own coefficient field, sorted in canonical order.
pub fn roots(f: &Poly) -> Result<Vec<Elem>> {
    if f.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let f = f.monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let ctx = f.ctx();
    let x = Poly::x(ctx);
    let xq = x.powmod_u64(ctx.order(), &f);
    let linear_part = f.gcd(&(&xq - &x));
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out: Vec<Elem> = split_equal_degree(&linear_part, 1, &mut rng)
        .into_iter()
        .map(|l| ctx.neg(l.coeff(0)))
        .collect();
    out.sort();
    Ok(out)
}

/// Groups the irreducible factors of a monic squarefree `f` by degree:
/// returns `(d, product of the degree-d factors)` for each occurring `d`.
pub fn distinct_degree(f: &Poly) -> Vec<(usize, Poly)> {
    let ctx = f.ctx();
    let x = Poly::x(ctx);
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.rem(&rest).expect("nonzero").frobenius_mod(&rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_constant() {
            rest = rest.divmod(&g).expect("nonzero").0;
            out.push((d, g));
        }
    }
    if let Some(k) = rest.degree().filter(|&k| k > 0) {
        out.push((k, rest));
    }
    out
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree
/// `d` into those factors.
pub fn split_equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let ctx = f.ctx();
    let q = ctx.order();
    let p = ctx.characteristic();
    loop {
        let coeffs = (0..n).map(|_| ctx.from_index(rng.random_range(0..q))).collect();
        let a = Poly::from_elems(ctx, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace of a, as an element of F_{2^{kd}}[x]/(f).
            let mut acc = a.clone();
            let mut term = a.clone();
            for _ in 1..(ctx.degree() as usize * d) {
                term = term.mulmod(&term, f);
                acc = &acc + &term;
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            &a.powmod(&e, f) - &Poly::one(ctx)
        };
        let g = f.gcd(&b);
        if !g.is_constant() && g.degree() != f.degree() {
            let h = f.divmod(&g).expect("nonzero").0;
            let mut out = split_equal_degree(&g, d, rng);
            out.extend(split_equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial, sorted.
pub fn factor_squarefree(f: &Poly) -> Result<Vec<Poly>> {
    if !f.is_squarefree() {
        return Err(Error::Domain(format!("{f} is not squarefree")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out: Vec<Poly> = distinct_degree(f)
        .into_iter()
        .flat_map(|(d, g)| split_equal_degree(&g, d, &mut rng))
        .collect();
    out.sort();
    Ok(out)
}
