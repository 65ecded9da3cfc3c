//! Place counts, L-polynomial, class number and zeta values of one cover.
//!
//! cargo run --example l_polynomial -- [spec]

use abelzeta::funcfield::{count_places, ramification_report, Cover};
use abelzeta::zeta::{LPolynomial, ZetaReport};
use abelzeta::Budget;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> abelzeta::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "kummer:q=5,m=2,f=x^5+x+1".into());
    let cover = Cover::parse(&spec)?;
    let g = ramification_report(&cover)?.genus;
    let counted = count_places(&cover, g.max(1) as u32, Budget::DEFAULT)?;
    let lpoly = LPolynomial::from_counts(cover.q(), g, &counted.counts)?;
    println!("{cover}: g = {g}, N = {:?}", counted.counts);
    println!("L(u) coefficients: {:?}", lpoly.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("functional equation holds: {}", lpoly.satisfies_functional_equation());
    println!("h = L(1) = {}", lpoly.class_number());

    let report = ZetaReport::new(lpoly.clone(), g + 3)?;
    println!("N_1..N_{}: {:?}", g + 3, report.counts.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("A_0..A_5: {:?}", lpoly.divisor_count_series(5)?.iter().map(ToString::to_string).collect::<Vec<_>>());
    let u = BigRational::new(BigInt::from(1), BigInt::from(cover.q() * cover.q()));
    println!("Z(q^-2) = {}", lpoly.zeta_eval(&u)?);
    Ok(())
}
