//! Counting and enumerating monic irreducible polynomials over `F_q`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::arith::{divisors, mobius};
use super::embed::embedding;
use super::field::{field_ctx, Elem, Gf};
use super::poly::Poly;
use crate::error::{Budget, Error, Result};

/// Number of monic irreducible polynomials of degree `m` over `F_q`:
/// `(1/m) sum_{d | m} mu(m/d) q^d`.
pub fn count_monic_irreducibles(q: u64, m: u64) -> BigUint {
    assert!(m >= 1, "degree must be positive");
    let q = BigInt::from(q);
    let mut sum = BigInt::zero();
    for d in divisors(m) {
        let term = q.pow(d as u32);
        match mobius(m / d) {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    let m = BigInt::from(m);
    assert!((&sum % &m).is_zero(), "Möbius sum must be divisible by the degree");
    let out = sum / m;
    assert!(!out.is_negative());
    out.to_biguint().expect("nonnegative")
}

/// All monic irreducibles of degree `d` over `base`, in canonical order.
///
/// The polynomials are recovered as minimal polynomials of the elements of
/// exact degree `d` in `F_{q^d}`, one per Frobenius orbit, so the work is
/// `q^d` field operations; that count is checked against `budget`.
pub fn enumerate_monic_irreducibles(base: &Gf, d: u32, budget: Budget) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    let q = base.order();
    budget.check((q as u128).pow(d))?;
    if d == 1 {
        return Ok(base
            .elements()
            .map(|a| Poly::from_elems(base, vec![base.neg(a), Elem::ONE]))
            .collect());
    }
    let ext = field_ctx(base.characteristic(), base.degree() * d)?;
    let emb = embedding(base, &ext)?;
    let mut out = Vec::new();
    let mut orbit = Vec::with_capacity(d as usize);
    'elements: for alpha in ext.elements() {
        orbit.clear();
        orbit.push(alpha);
        let mut beta = alpha;
        for _ in 1..d {
            beta = ext.pow(beta, q);
            // Keep only the least element of each full-size orbit.
            if beta <= alpha {
                continue 'elements;
            }
            orbit.push(beta);
        }
        // prod (x - beta) over the orbit, computed in F_{q^d}[x].
        let mut coeffs = vec![Elem::ONE];
        for &b in &orbit {
            let mut next = vec![Elem::ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = ext.add(next[i + 1], c);
                next[i] = ext.sub(next[i], ext.mul(c, b));
            }
            coeffs = next;
        }
        let lowered = coeffs
            .iter()
            .map(|&c| emb.preimage(c))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invariant("minimal polynomial not defined over the base".into()))?;
        out.push(Poly::from_elems(base, lowered));
    }
    out.sort();
    Ok(out)
}
