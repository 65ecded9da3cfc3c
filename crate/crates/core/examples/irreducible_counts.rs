//! Monic irreducible counts ψ(d) by the Möbius formula and by enumeration.
//!
//! cargo run --example irreducible_counts -- [q] [m]

use abelzeta::lab::{irr_count, necklace_identity};
use abelzeta::Budget;

fn main() -> abelzeta::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let q = args.next().unwrap_or(3);
    let m = args.next().unwrap_or(8);
    println!("{:>3} {:>14} {:>12}", "d", "formula", "enumerated");
    for row in irr_count(q, m, Budget(1 << 20))? {
        let e = row.enumerated.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
        println!("{:>3} {:>14} {:>12}", row.d, row.formula, e);
        assert!(row.agrees());
    }
    println!("sum_(d|m) d ψ(d) = q^m: {}", necklace_identity(q, m));
    Ok(())
}
