//! Random covers: place splitting against brute-force point counts.
//!
//! cargo run --release --example oracle_crosscheck -- [seed] [count] [max_genus]

use abelzeta::lab::{run_oracle, Config, OracleOptions};

fn main() -> abelzeta::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let opts = OracleOptions {
        seed: args.next().unwrap_or(1),
        count: args.next().unwrap_or(10) as usize,
        max_genus: args.next().unwrap_or(4),
        ..OracleOptions::default()
    };
    let summary = run_oracle(&opts, &Config::default())?;
    for c in &summary.cases {
        let mark = if c.mismatches.is_empty() { "ok" } else { "MISMATCH" };
        println!("{:<8} g = {}  S = {:?}  {}", mark, c.g, c.s_splitting, c.spec);
    }
    println!("passed: {}", summary.passed);
    Ok(())
}
