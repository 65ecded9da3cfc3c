//! Arithmetic in F_2 ⊂ F_4 ⊂ F_16 and F_3 ⊂ F_9, with canonical embeddings.
//!
//! cargo run --example field_tower

use abelzeta::algebra::{embedding, field_ctx, FieldElement};
use num_bigint::BigUint;

fn main() -> abelzeta::Result<()> {
    let f4 = field_ctx(2, 2)?;
    let f16 = field_ctx(2, 4)?;
    println!("{f4}: modulus {}", f4.modulus_poly());
    println!("{f16}: modulus {}", f16.modulus_poly());

    let t = FieldElement::generator(&f4);
    let t2 = t.pow_u64(2);
    println!("in F_4: t^2 = {t2}, t^3 = {}", t.pow_u64(3));

    let emb = embedding(&f4, &f16)?;
    let image = FieldElement::new(&f16, emb.image_of_generator());
    println!("t of F_4 maps to {image} in F_16");
    // The embedding is a ring map: the image of t^2 is the square of the image of t.
    let lhs = FieldElement::new(&f16, emb.apply(t2.value()));
    assert_eq!(lhs, image.pow_u64(2));

    let f9 = field_ctx(3, 2)?;
    let g = FieldElement::generator(&f9);
    let order = (1..=8u64).find(|&k| g.pow_u64(k) == FieldElement::one(&f9)).unwrap();
    println!("{f9}: modulus {}, generator order {order}", f9.modulus_poly());
    let x = FieldElement::from_digits(&f9, &[2, 1]);
    println!("x = {x}, x^-1 = {}, Tr(x) = {}", x.inv()?, x.trace_to_prime());
    println!("x^(3^20) = {}", x.pow(&BigUint::from(3u32).pow(20)));
    Ok(())
}
