//! Artin-Schreier covers of F_2(x) with growing genus; ln h / (g ln q)
//! approaches 1. Writes sweep.csv, sweep.json and sweep.svg to the
//! target directory.
//!
//! cargo run --release --example convergence_sweep -- [plan.json]

use std::fs;
use std::path::PathBuf;

use abelzeta::lab::{render_svg, run_sweep, Config, SweepPlan};

fn main() -> abelzeta::Result<()> {
    let default = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/plans/as_q2_g1_20.json");
    let path = std::env::args().nth(1).unwrap_or_else(|| default.into());
    let plan = SweepPlan::from_json(&fs::read_to_string(&path)?)?;
    let result = run_sweep(&plan, &Config::default(), false)?;
    for r in &result.rows {
        println!("g = {:>2}  h = {:>10}  ratio = {}", r.bounds.g, r.bounds.h, r.bounds.ratio.as_deref().unwrap_or("-"));
    }
    println!("max |ratio - 1| over the asserted segment: {:?}", result.summary.max_abs_ratio_minus_one);

    let out = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../target"));
    fs::create_dir_all(&out)?;
    fs::write(out.join("sweep.csv"), result.to_csv()?)?;
    fs::write(out.join("sweep.json"), result.to_json()?)?;
    fs::write(out.join("sweep.svg"), render_svg(&result.rows, plan.q, false))?;
    println!("wrote {}", out.join("sweep.{csv,json,svg}").display());
    Ok(())
}
