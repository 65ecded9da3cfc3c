use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{analyze_cover, csv_cells, Config, CSV_COLUMNS};
use crate::algebra::{field_of_order, Elem, Gf, Poly};
use crate::bounds::BoundsReport;
use crate::error::{Budget, Error, Result};
use crate::funcfield::{CoverSpec, WorkCounters};
use crate::precision::{bits_for_digits, Interval, Verdict};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FMode {
    /// Uniform monic `f` of each degree, rejection-sampled to validity.
    #[default]
    Random,
    /// `f = x^d`.
    Monomial,
}

/// A family sweep over `deg f = deg_min, deg_min + step, ..., <= deg_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPlan {
    /// `kummer` or `artin-schreier`.
    pub family: String,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub deg_min: u64,
    pub deg_max: u64,
    #[serde(default = "one")]
    pub step: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub f_mode: FMode,
    /// Rows with `g >= asserted_min_genus` must satisfy the report-only
    /// checks too.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asserted_min_genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
}

fn one() -> u64 {
    1
}

impl SweepPlan {
    pub fn from_json(text: &str) -> Result<SweepPlan> {
        let plan: SweepPlan =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("sweep plan: {e}")))?;
        plan.check()?;
        Ok(plan)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Validation(format!("sweep plan: {msg}")));
        if self.step == 0 {
            return bad("step must be positive".into());
        }
        match (self.family.as_str(), self.m) {
            ("kummer", Some(_)) | ("artin-schreier", None) => {}
            ("kummer", None) => return bad("kummer sweeps need m".into()),
            ("artin-schreier", Some(_)) => return bad("artin-schreier sweeps take no m".into()),
            (other, _) => return bad(format!("unknown family {other:?}")),
        }
        let p = field_of_order(self.q)
            .map_err(|e| Error::Validation(format!("sweep plan: {e}")))?
            .characteristic();
        if self.family == "artin-schreier" {
            if let Some(d) = self.degrees().into_iter().find(|d| d % p == 0) {
                return bad(format!("degree {d} is divisible by the characteristic {p}"));
            }
        }
        Ok(())
    }

    pub fn degrees(&self) -> Vec<u64> {
        if self.deg_min > self.deg_max || self.step == 0 {
            return Vec::new();
        }
        (self.deg_min..=self.deg_max).step_by(self.step as usize).collect()
    }

    /// The cover for degree `d`, drawn from a generator seeded by
    /// `(seed, d)` so that rows do not depend on each other.
    pub fn spec_for(&self, d: u64) -> Result<CoverSpec> {
        let base = field_of_order(self.q)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ d.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let kummer = self.family == "kummer";
        let f = match self.f_mode {
            FMode::Monomial => Poly::monomial(&base, Elem::ONE, d as usize),
            FMode::Random => loop {
                let f = random_monic(&base, d as usize, &mut rng);
                if !kummer || f.is_squarefree() {
                    break f;
                }
            },
        };
        Ok(match self.m {
            Some(m) => CoverSpec::kummer(m, f),
            None => CoverSpec::artin_schreier(f),
        })
    }
}

/// A uniformly random monic polynomial of degree `d`.
pub(crate) fn random_monic(base: &Gf, d: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut coeffs: Vec<Elem> = (0..d)
        .map(|_| base.from_index(rng.random_range(0..base.order())))
        .collect();
    coeffs.push(Elem::ONE);
    Poly::from_elems(base, coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    #[serde(flatten)]
    pub bounds: BoundsReport,
    pub work: WorkCounters,
    /// Whether the row lies in the asserted segment.
    pub asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asserted_min_genus: Option<u64>,
    pub asserted_rows: usize,
    /// `max |ratio - 1|` over the asserted segment.
    pub max_abs_ratio_minus_one: Option<String>,
    pub genus_min: Option<u64>,
    pub genus_max: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub plan: SweepPlan,
    pub summary: SweepSummary,
    pub rows: Vec<SweepRow>,
}

/// Analyzes every cover of the plan in parallel. Any hard-check failure,
/// or a report-only failure inside the asserted segment, aborts the sweep
/// naming the offending spec.
pub fn run_sweep(plan: &SweepPlan, config: &Config, timings: bool) -> Result<SweepResult> {
    plan.check()?;
    let mut config = *config;
    if let Some(b) = plan.budget {
        config.budget = Budget(b);
    }
    let degrees = plan.degrees();
    let mut rows = config.run(|| {
        degrees
            .par_iter()
            .map(|&d| {
                let start = Instant::now();
                let cover = plan.spec_for(d)?.validate()?;
                let a = analyze_cover(&cover, &config, false)?;
                let asserted = plan.asserted_min_genus.is_some_and(|g0| a.bounds.g >= g0);
                Ok(SweepRow {
                    bounds: a.bounds,
                    work: a.work,
                    asserted,
                    wall_ms: timings.then(|| start.elapsed().as_millis()),
                })
            })
            .collect::<Result<Vec<SweepRow>>>()
    })??;
    rows.sort_by_key(|r| r.bounds.g);
    for r in &rows {
        let mut failed = r.bounds.checks.hard_failures();
        if r.asserted {
            for (name, v) in [
                ("thm1_lower", r.bounds.checks.thm1_lower),
                ("effective_lower", r.bounds.checks.effective_lower),
            ] {
                if v != Verdict::True {
                    failed.push(name);
                }
            }
        }
        if !failed.is_empty() {
            return Err(Error::Invariant(format!(
                "{}: failed {}",
                r.bounds.spec,
                failed.join(", ")
            )));
        }
    }
    let summary = summarize(plan, &rows, config.digits)?;
    Ok(SweepResult {
        plan: plan.clone(),
        summary,
        rows,
    })
}

fn summarize(plan: &SweepPlan, rows: &[SweepRow], digits: u32) -> Result<SweepSummary> {
    let digits = digits.max(30);
    let bits = bits_for_digits(digits);
    let mut worst: Option<Interval> = None;
    let segment: Vec<&SweepRow> = rows.iter().filter(|r| r.asserted && r.bounds.g > 0).collect();
    for r in &segment {
        let b = &r.bounds;
        let d = crate::bounds::ratio(b.q, b.g, &b.h, bits)?.distance_to_one();
        worst = Some(match worst {
            None => d,
            Some(w) => w.max(&d),
        });
    }
    Ok(SweepSummary {
        rows: rows.len(),
        asserted_min_genus: plan.asserted_min_genus,
        asserted_rows: segment.len(),
        max_abs_ratio_minus_one: worst.map(|w| w.to_decimal(digits)),
        genus_min: rows.first().map(|r| r.bounds.g),
        genus_max: rows.last().map(|r| r.bounds.g),
    })
}

impl SweepResult {
    /// The rows as CSV, header included.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = CSV_COLUMNS.to_vec();
        header.extend(["places", "elements"]);
        let timed = self.rows.iter().any(|r| r.wall_ms.is_some());
        if timed {
            header.push("wall_ms");
        }
        w.write_record(&header)?;
        for r in &self.rows {
            let mut cells = csv_cells(&r.bounds, r.asserted);
            cells.push(r.work.places.to_string());
            cells.push(r.work.elements.to_string());
            if timed {
                cells.push(r.wall_ms.map(|t| t.to_string()).unwrap_or_default());
            }
            w.write_record(&cells)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(text: &str) -> SweepPlan {
        SweepPlan::from_json(text).unwrap()
    }

    #[test]
    fn plan_validation() {
        assert!(SweepPlan::from_json(r#"{"family":"kummer","q":5,"deg_min":3,"deg_max":5}"#).is_err());
        assert!(SweepPlan::from_json(r#"{"family":"artin-schreier","q":2,"deg_min":3,"deg_max":6}"#).is_err());
        assert!(SweepPlan::from_json(r#"{"family":"artin-schreier","q":2,"deg_min":3,"deg_max":7,"step":2,"colour":1}"#).is_err());
        assert!(SweepPlan::from_json("not json").is_err());
        let p = plan(r#"{"family":"artin-schreier","q":2,"deg_min":3,"deg_max":41,"step":2}"#);
        assert_eq!(p.degrees().len(), 20);
    }

    #[test]
    fn empty_schedule() {
        let p = plan(r#"{"family":"artin-schreier","q":2,"deg_min":9,"deg_max":3}"#);
        let r = run_sweep(&p, &Config::default(), false).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.to_csv().unwrap().lines().count(), 1);
    }

    #[test]
    fn hyperelliptic_genera() {
        let p = plan(r#"{"family":"kummer","q":5,"m":2,"deg_min":5,"deg_max":9,"step":2,"seed":7}"#);
        let r = run_sweep(&p, &Config::default(), false).unwrap();
        let genera: Vec<u64> = r.rows.iter().map(|r| r.bounds.g).collect();
        assert_eq!(genera, [2, 3, 4]);
    }

    #[test]
    fn sweep_is_reproducible() {
        assert!(SweepPlan::from_json(r#"{"family":"artin-schreier","q":3,"deg_min":1,"deg_max":8}"#).is_err());
        let p = plan(r#"{"family":"artin-schreier","q":3,"deg_min":1,"deg_max":7,"step":3,"seed":5,"asserted_min_genus":3}"#);
        let a = run_sweep(&p, &Config { threads: Some(1), ..Config::default() }, false).unwrap();
        let b = run_sweep(&p, &Config { threads: Some(4), ..Config::default() }, false).unwrap();
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }
}
