use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sweep::random_monic;
use super::Config;
use crate::bounds::{bounds_report, BoundsReport};
use crate::error::{Error, Result};
use crate::funcfield::{
    count_places, point_count_bruteforce, ramification_report, s_from_counts, Cover, CoverSpec,
};
use crate::algebra::field_of_order;
use crate::zeta::{LPolynomial, ZetaReport};

const FIELDS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub seed: u64,
    pub count: usize,
    pub max_genus: u64,
    /// Specs are drawn only when `q^(2g+1)` is at most this.
    pub work_cap: u64,
    /// Adds one to the counted `N_2` before comparing (fault injection).
    pub corrupt_n2: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            seed: 1,
            count: 25,
            max_genus: 6,
            work_cap: 1 << 22,
            corrupt_n2: false,
        }
    }
}

/// A disagreement between the splitting engine and an independent count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub spec: String,
    pub what: &'static str,
    pub k: u64,
    pub splitting: String,
    pub oracle: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCase {
    pub spec: String,
    pub g: u64,
    /// `S_1..S_{2g+1}` from the place counts.
    pub s_splitting: Vec<u64>,
    /// `S_1..S_{2g+1}` by enumeration of points.
    pub s_bruteforce: Vec<u64>,
    pub functional_equation: bool,
    pub bounds: Option<BoundsReport>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub seed: u64,
    pub count: usize,
    pub max_genus: u64,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
    pub hard_failures: Vec<String>,
    pub cases: Vec<OracleCase>,
}

/// Draws `count` valid covers over the fields in `FIELDS` with genus at
/// most `max_genus` and `q^(2g+1) <= work_cap`, deterministically.
pub fn draw_specs(opts: &OracleOptions) -> Result<Vec<Cover>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::with_capacity(opts.count);
    let mut attempts = 0usize;
    while out.len() < opts.count {
        attempts += 1;
        if attempts > 10_000 + 1000 * opts.count {
            return Err(Error::Domain("could not draw enough oracle specs".into()));
        }
        let q = FIELDS[rng.random_range(0..FIELDS.len())];
        let base = field_of_order(q)?;
        let p = base.characteristic();
        let kummer_ms: Vec<u64> = (2..q).filter(|m| (q - 1).is_multiple_of(*m)).collect();
        let deg = rng.random_range(1..=2 * opts.max_genus + 2) as usize;
        let spec = if kummer_ms.is_empty() || rng.random_bool(0.5) {
            if (deg as u64).is_multiple_of(p) {
                continue;
            }
            CoverSpec::artin_schreier(random_monic(&base, deg, &mut rng))
        } else {
            let m = kummer_ms[rng.random_range(0..kummer_ms.len())];
            let f = random_monic(&base, deg, &mut rng);
            if !f.is_squarefree() {
                continue;
            }
            CoverSpec::kummer(m, f)
        };
        let Ok(cover) = spec.validate() else { continue };
        let g = ramification_report(&cover)?.genus;
        let fits = (q as u128)
            .checked_pow(2 * g as u32 + 1)
            .is_some_and(|w| w <= opts.work_cap as u128);
        if g <= opts.max_genus && fits {
            out.push(cover);
        }
    }
    Ok(out)
}

/// Compares `S_k` from place splitting with point enumeration for
/// `k = 1..=2g+1`, checks the L-polynomial and runs every bound.
pub fn check_cover(cover: &Cover, config: &Config, corrupt_n2: bool) -> Result<OracleCase> {
    let spec = cover.to_string();
    let ram = ramification_report(cover)?;
    let g = ram.genus;
    let top = 2 * g as u32 + 1;
    let mut counts = count_places(cover, top, config.budget)?.counts;
    if corrupt_n2 && counts.len() >= 2 {
        counts[1] += 1;
    }
    let s_splitting: Vec<u64> = (1..=top).map(|k| s_from_counts(&counts, k)).collect();
    let s_bruteforce = (1..=top)
        .map(|k| point_count_bruteforce(cover, k, config.budget))
        .collect::<Result<Vec<u64>>>()?;
    let mut mismatches = Vec::new();
    for (k, (a, b)) in s_splitting.iter().zip(&s_bruteforce).enumerate() {
        if a != b {
            mismatches.push(Mismatch {
                spec: spec.clone(),
                what: "S_k",
                k: k as u64 + 1,
                splitting: a.to_string(),
                oracle: b.to_string(),
            });
        }
    }
    let (functional_equation, bounds) = match LPolynomial::from_counts(cover.q(), g, &counts) {
        Ok(lpoly) => {
            let predicted = lpoly.predicted_s(g + 1);
            let counted = s_splitting[g as usize];
            if predicted != counted.into() {
                mismatches.push(Mismatch {
                    spec: spec.clone(),
                    what: "predicted_S",
                    k: g + 1,
                    splitting: counted.to_string(),
                    oracle: predicted.to_string(),
                });
            }
            let fe = lpoly.satisfies_functional_equation();
            let zeta = ZetaReport::new(lpoly, g.max(1))?;
            (fe, Some(bounds_report(cover, &ram, &zeta, config.digits)?))
        }
        Err(e) => {
            mismatches.push(Mismatch {
                spec: spec.clone(),
                what: "lpoly",
                k: 0,
                splitting: e.to_string(),
                oracle: String::new(),
            });
            (false, None)
        }
    };
    Ok(OracleCase {
        spec,
        g,
        s_splitting,
        s_bruteforce,
        functional_equation,
        bounds,
        mismatches,
    })
}

/// Draws the specs and checks each of them in parallel.
pub fn run_oracle(opts: &OracleOptions, config: &Config) -> Result<OracleSummary> {
    let covers = draw_specs(opts)?;
    let cases = config.run(|| {
        covers
            .par_iter()
            .map(|c| check_cover(c, config, opts.corrupt_n2))
            .collect::<Result<Vec<_>>>()
    })??;
    let mismatches: Vec<Mismatch> = cases.iter().flat_map(|c| c.mismatches.clone()).collect();
    let hard_failures: Vec<String> = cases
        .iter()
        .flat_map(|c| {
            let fails = c.bounds.as_ref().map(|b| b.checks.hard_failures()).unwrap_or_default();
            fails.into_iter().map(move |n| format!("{}: {n}", c.spec))
        })
        .collect();
    let passed = mismatches.is_empty()
        && hard_failures.is_empty()
        && cases.iter().all(|c| c.functional_equation);
    Ok(OracleSummary {
        seed: opts.seed,
        count: opts.count,
        max_genus: opts.max_genus,
        passed,
        mismatches,
        hard_failures,
        cases,
    })
}

impl OracleSummary {
    /// One row per case: spec, g, mismatch count, functional equation.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["spec", "g", "mismatches", "functional_equation"])?;
        for c in &self.cases {
            w.write_record([
                c.spec.clone(),
                c.g.to_string(),
                c.mismatches.len().to_string(),
                c.functional_equation.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}
