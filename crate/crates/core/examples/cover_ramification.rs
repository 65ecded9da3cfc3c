//! Ramified places, different degree and genus of a few covers.
//!
//! cargo run --example cover_ramification -- [spec ...]

use abelzeta::funcfield::{ramification_report, split_place, Cover, RationalPlace};

fn main() -> abelzeta::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = ["as:q=2,f=x^3", "kummer:q=3,m=2,f=x^3+2*x", "kummer:q=7,m=3,f=x^4+x", "as:q=4,f=x^5+(t)*x"]
            .map(String::from)
            .to_vec();
    }
    for s in &specs {
        let cover = Cover::parse(s)?;
        let r = ramification_report(&cover)?;
        println!("{cover}: n = {}, deg Diff = {}, g = {}", cover.degree(), r.different_degree, r.genus);
        for e in &r.ramified {
            println!("  {:<12} deg {} e = {} d = {}", e.place.to_string(), e.degree, e.e, e.alpha);
        }
        let inf = split_place(&cover, &RationalPlace::Infinity)?;
        println!("  infinity splits as e = {}, f = {}, g = {}", inf.e, inf.f_res, inf.g_count);
    }
    Ok(())
}
