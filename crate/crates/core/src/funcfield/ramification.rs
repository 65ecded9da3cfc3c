use serde::Serialize;

use super::cover::{Cover, Family};
use super::place::RationalPlace;
use crate::algebra::arith::gcd;
use crate::algebra::factor::factor_squarefree;
use crate::error::{Error, Result};

/// One ramified place `p` of `F_q(x)`: all places above it share `e`,
/// the different exponent `alpha` and the jump count `k`.
#[derive(Clone, Debug, Serialize)]
pub struct RamificationEntry {
    #[serde(serialize_with = "display")]
    pub place: RationalPlace,
    pub degree: u32,
    pub e: u64,
    pub alpha: u64,
    pub k: u64,
    /// Sum of the degrees of the places above.
    #[serde(skip)]
    pub degree_above: u64,
}

fn display<S: serde::Serializer>(p: &RationalPlace, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationReport {
    pub family: &'static str,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub genus: u64,
    pub different_degree: u64,
    pub ramified: Vec<RamificationEntry>,
}

/// Ramified places, degree of the different and genus of `cover`.
pub fn ramification_report(cover: &Cover) -> Result<RamificationReport> {
    let n = cover.degree();
    let deg_f = cover.f().degree().unwrap_or(0) as u64;
    let mut ramified = Vec::new();
    let mut entry = |place: RationalPlace, e: u64, alpha: u64| {
        let degree = place.degree();
        ramified.push(RamificationEntry {
            place,
            degree,
            e,
            alpha,
            k: 1,
            degree_above: n / e * degree as u64,
        });
    };
    match cover.family() {
        Family::Kummer { m } => {
            for p in factor_squarefree(cover.f())? {
                entry(RationalPlace::Finite(p), m, m - 1);
            }
            let e_inf = m / gcd(m, deg_f);
            if e_inf > 1 {
                entry(RationalPlace::Infinity, e_inf, e_inf - 1);
            }
        }
        Family::ArtinSchreier => {
            let p = cover.base().characteristic();
            entry(RationalPlace::Infinity, p, (p - 1) * (deg_f + 1));
        }
    }
    let different_degree: u64 = ramified.iter().map(|r| r.alpha * r.degree_above).sum();
    let genus = genus_via_riemann_hurwitz(n, different_degree)?;
    Ok(RamificationReport {
        family: cover.family().name(),
        q: cover.q(),
        m: cover.m(),
        genus,
        different_degree,
        ramified,
    })
}

/// Solves `2g - 2 = -2n + deg D` for `g`.
pub fn genus_via_riemann_hurwitz(n: u64, different_degree: u64) -> Result<u64> {
    let twice = different_degree as i128 - 2 * n as i128 + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Invariant(format!(
            "Riemann-Hurwitz gives 2g = {twice} for n = {n}, deg D = {different_degree}"
        )));
    }
    Ok((twice / 2) as u64)
}
