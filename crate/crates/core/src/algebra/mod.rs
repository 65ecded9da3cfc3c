//! Exact arithmetic in finite fields `F_{p^n}`, their canonical embeddings,
//! and polynomials over them.

pub mod arith;
pub mod embed;
pub mod factor;
pub mod field;
pub mod irreducible;
pub mod poly;
pub mod text;

pub use arith::mobius;
pub use embed::{embedding, Embedding};
pub use field::{
    field_ctx, field_of_order, rth_power_residue_degree, Elem, FieldCtx, FieldElement, Gf,
};
pub use irreducible::{count_monic_irreducibles, enumerate_monic_irreducibles};
pub use poly::Poly;
