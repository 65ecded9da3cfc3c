//! Every class-number bound on one cover, plus the ratio ln h / (g ln q).
//!
//! cargo run --example bounds_report -- [spec]

use abelzeta::funcfield::Cover;
use abelzeta::lab::{analyze_cover, Config};

fn main() -> abelzeta::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "as:q=2,f=x^21+x^5+1".into());
    let a = analyze_cover(&Cover::parse(&spec)?, &Config::default(), true)?;
    let b = &a.bounds;
    println!("{}: g = {}, h = {}, ratio = {}", b.spec, b.g, b.h, b.ratio.as_deref().unwrap_or("-"));
    for (name, verdict) in b.checks.named() {
        println!("  {name:<18} {verdict:?}");
    }
    println!("hard failures: {:?}", a.hard_failures());
    Ok(())
}
