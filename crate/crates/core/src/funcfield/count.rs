use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::cover::{Cover, Family};
use super::place::{split_place, PointSplitter, RationalPlace};
use crate::algebra::arith::divisors;
use crate::algebra::{count_monic_irreducibles, embedding, field_ctx};
use crate::error::{Budget, Result};

const CHUNK: u64 = 1 << 14;

/// Exact work done by [`count_places`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WorkCounters {
    /// Places of `F_q(x)` split, including infinity.
    pub places: u64,
    /// Elements of the residue fields `F_{q^d}` visited.
    pub elements: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceCounts {
    /// `N_1, ..., N_B`.
    pub counts: Vec<u64>,
    pub work: WorkCounters,
}

/// Number of places of each degree `1..=bound` of the cover.
///
/// Each place of `F_q(x)` of degree `d <= bound` is visited once, as the
/// least element of a Frobenius orbit of length `d` in `F_{q^d}`.
pub fn count_places(cover: &Cover, bound: u32, budget: Budget) -> Result<PlaceCounts> {
    let q = cover.q() as u128;
    let needed: u128 = (1..=bound).map(|d| q.pow(d)).sum();
    budget.check(needed)?;
    let b = bound as u64;
    let mut counts = vec![0u64; bound as usize];
    let mut work = WorkCounters::default();
    let add = |counts: &mut Vec<u64>, deg: u64, st: super::SplittingType, times: u64| {
        let d = deg * st.f_res;
        if d <= b {
            counts[d as usize - 1] += st.g_count * times;
        }
    };
    if bound == 0 {
        return Ok(PlaceCounts { counts, work });
    }
    add(&mut counts, 1, split_place(cover, &RationalPlace::Infinity)?, 1);
    work.places += 1;
    for d in 1..=bound {
        let splitter = PointSplitter::new(cover, d)?;
        let ctx = splitter.residue().clone();
        let order = ctx.order();
        let qq = cover.q();
        let chunks = order.div_ceil(CHUNK);
        // (places found, histogram of splitting types) per chunk
        let merged = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                let len = CHUNK.min(order - start);
                let mut found = 0u64;
                let mut hist: HashMap<super::SplittingType, u64> = HashMap::new();
                'elements: for alpha in ctx.elements_from(start, len) {
                    let mut beta = alpha;
                    for _ in 1..d {
                        beta = ctx.pow(beta, qq);
                        if beta <= alpha {
                            continue 'elements;
                        }
                    }
                    found += 1;
                    *hist.entry(splitter.split_at(alpha)).or_default() += 1;
                }
                (found, hist)
            })
            .reduce(
                || (0, HashMap::new()),
                |(fa, mut ha), (fb, hb)| {
                    for (k, v) in hb {
                        *ha.entry(k).or_default() += v;
                    }
                    (fa + fb, ha)
                },
            );
        work.places += merged.0;
        work.elements += order;
        for (st, times) in merged.1 {
            add(&mut counts, d as u64, st, times);
        }
    }
    Ok(PlaceCounts { counts, work })
}

/// `S_k = sum_{d | k} d N_d`, the number of degree-one places of the
/// constant field extension of degree `k`. Needs `counts.len() >= k`.
pub fn s_from_counts(counts: &[u64], k: u32) -> u64 {
    divisors(k as u64)
        .into_iter()
        .map(|d| d * counts[d as usize - 1])
        .sum()
}

/// `S_k` by direct enumeration: affine solutions `(x0, y0)` over `F_{q^k}`
/// plus the degree-one places above infinity of the extended cover.
pub fn point_count_bruteforce(cover: &Cover, k: u32, budget: Budget) -> Result<u64> {
    let base = cover.base();
    let ext = field_ctx(base.characteristic(), base.degree() * k)?;
    let order = ext.order();
    budget.check(2 * order as u128)?;
    // fibre[z] = #{y : lhs(y) = z}
    let p = ext.characteristic();
    let mut fibre = vec![0u32; order as usize];
    for y in ext.elements() {
        let z = match cover.family() {
            Family::Kummer { m } => ext.pow(y, m),
            Family::ArtinSchreier => ext.sub(ext.pow(y, p), y),
        };
        fibre[ext.index(z) as usize] += 1;
    }
    let f = cover.f().map_coeffs(&*embedding(base, &ext)?);
    let affine: u64 = (0..order.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            ext.elements_from(start, CHUNK.min(order - start))
                .map(|x| fibre[ext.index(f.eval(x)) as usize] as u64)
                .sum::<u64>()
        })
        .sum();
    let inf = split_place(&cover.extend_constants(k)?, &RationalPlace::Infinity)?;
    let at_infinity = if inf.f_res == 1 { inf.g_count } else { 0 };
    Ok(affine + at_infinity)
}

/// `n_1, ..., n_B` for `F_q(x)`: `q + 1` rational places, then the monic
/// irreducible counts.
pub fn rational_place_counts(q: u64, bound: u32) -> Vec<BigUint> {
    (1..=bound as u64)
        .map(|d| {
            let c = count_monic_irreducibles(q, d);
            if d == 1 {
                c + 1u32
            } else {
                c
            }
        })
        .collect()
}
