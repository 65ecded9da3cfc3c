use num_bigint::BigInt;
use serde::Serialize;

use super::Config;
use crate::bounds::{bounds_report, BoundsReport};
use crate::error::{Error, Result};
use crate::funcfield::{count_places, ramification_report, Cover, RamificationReport, WorkCounters};
use crate::zeta::{LPolynomial, ZetaReport};

/// Everything computed for one cover.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub spec: String,
    pub ramification: RamificationReport,
    pub zeta: ZetaReport,
    pub bounds: BoundsReport,
    pub work: WorkCounters,
}

impl Analysis {
    pub fn hard_failures(&self) -> Vec<&'static str> {
        self.bounds.checks.hard_failures()
    }
}

/// Runs the full pipeline on one cover: ramification and genus, place
/// counts `N_1..N_g`, the L-polynomial and every bound.
///
/// With `verify_next` the places of degree `g + 1` are counted as well
/// and compared with the value the L-polynomial predicts.
pub fn analyze_cover(cover: &Cover, config: &Config, verify_next: bool) -> Result<Analysis> {
    let ram = ramification_report(cover)?;
    let g = ram.genus;
    let bound = g.max(1) + u64::from(verify_next);
    let counted = count_places(cover, bound as u32, config.budget)?;
    if counted.counts[0] == 0 {
        return Err(Error::Invariant(format!("{cover} has no place of degree one")));
    }
    let lpoly = LPolynomial::from_counts(cover.q(), g, &counted.counts)?;
    let zeta = ZetaReport::new(lpoly, bound)?;
    for (d, (c, z)) in counted.counts.iter().zip(&zeta.counts).enumerate() {
        if BigInt::from(*c) != *z {
            return Err(Error::Invariant(format!(
                "{cover}: counted N_{} = {c} but the L-polynomial predicts {z}",
                d + 1
            )));
        }
    }
    let bounds = bounds_report(cover, &ram, &zeta, config.digits)?;
    Ok(Analysis {
        spec: cover.to_string(),
        ramification: ram,
        zeta,
        bounds,
        work: counted.work,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::Verdict;

    #[test]
    fn worked_instances() {
        let cfg = Config::default();
        let a = analyze_cover(&Cover::parse("as:q=2,f=x^3").unwrap(), &cfg, true).unwrap();
        assert_eq!((a.bounds.g, a.bounds.h.clone()), (1, 3.into()));
        assert_eq!(a.bounds.deg_diff, 4);
        assert!(a.hard_failures().is_empty());
        let k = analyze_cover(&Cover::parse("kummer:q=3,m=2,f=x^3+2*x").unwrap(), &cfg, true).unwrap();
        assert_eq!((k.bounds.g, k.bounds.h.clone()), (1, 4.into()));
        assert_eq!(k.bounds.checks.lemma3, Verdict::True);
        let r = analyze_cover(&Cover::parse("kummer:q=3,m=2,f=x").unwrap(), &cfg, false).unwrap();
        assert_eq!((r.bounds.g, r.bounds.h.clone()), (0, 1.into()));
        assert!(r.bounds.ratio.is_none());
    }
}
