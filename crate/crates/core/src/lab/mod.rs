//! Orchestration: single-cover analysis, family sweeps, randomized oracle
//! runs and irreducible counts, with CSV/JSON/SVG output.

mod analyze;
mod irr;
mod oracle;
mod svg;
mod sweep;

pub use analyze::{analyze_cover, Analysis};
pub use irr::{irr_count, necklace_identity, IrrRow};
pub use oracle::{check_cover, draw_specs, run_oracle, Mismatch, OracleCase, OracleOptions, OracleSummary};
pub use svg::render_svg;
pub use sweep::{run_sweep, FMode, SweepPlan, SweepResult, SweepRow, SweepSummary};

use crate::bounds::{BoundsReport, REPORT_ONLY_CHECKS};
use crate::error::{Budget, Error, Result};
use crate::precision::Verdict;

/// Settings shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Config {
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    pub budget: Budget,
    /// Significant digits for certified real comparisons (at least 30).
    pub digits: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            threads: None,
            budget: Budget::DEFAULT,
            digits: 30,
        }
    }
}

impl Config {
    /// Runs `job` on a dedicated pool with the configured thread count.
    pub fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.threads {
            builder = builder.num_threads(n.max(1));
        }
        let pool = builder
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(job))
    }
}

/// Fixed CSV header for bounds rows.
pub const CSV_COLUMNS: [&str; 21] = [
    "spec",
    "family",
    "q",
    "m",
    "f",
    "n",
    "g",
    "h",
    "deg_diff",
    "ratio",
    "lemma2",
    "thm1_lower",
    "effective_lower",
    "upper_h",
    "ratio_upper",
    "zeta_chain",
    "lemma5",
    "hasse_arf_first",
    "hasse_arf_second",
    "riemann_roch",
    "lemma3",
];

fn cell(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "pass",
        Verdict::False => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

/// CSV cells of a bounds report. Report-only checks print as
/// `report-only` unless `asserted`.
pub fn csv_cells(r: &BoundsReport, asserted: bool) -> Vec<String> {
    let mut out = vec![
        r.spec.clone(),
        r.family.to_string(),
        r.q.to_string(),
        r.m.map(|m| m.to_string()).unwrap_or_default(),
        r.f.clone(),
        r.n.to_string(),
        r.g.to_string(),
        r.h.to_string(),
        r.deg_diff.to_string(),
        r.ratio.clone().unwrap_or_default(),
    ];
    for (name, v) in r.checks.named() {
        if !asserted && REPORT_ONLY_CHECKS.contains(&name) {
            out.push("report-only".into());
        } else {
            out.push(cell(v).into());
        }
    }
    out
}
