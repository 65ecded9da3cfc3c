//! Exact zeta functions of Kummer and Artin–Schreier covers of `F_q(x)`.
//!
//! The crate computes, for an explicit cyclic cover `K / F_q(x)`, its
//! ramification data and genus, the number of places of each degree, the
//! L-polynomial `P(u)` and class number `h = P(1)`, and then checks a family
//! of class-number inequalities exactly on the result.

pub mod algebra;
pub mod bounds;
mod decimal;
pub mod error;
pub mod funcfield;
pub mod lab;
pub mod precision;
pub mod zeta;

pub use error::{Budget, Error, Result};
