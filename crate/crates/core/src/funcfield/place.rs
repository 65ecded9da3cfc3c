use std::fmt;

use serde::Serialize;

use super::cover::{Cover, Family};
use crate::algebra::arith::{divisors, gcd};
use crate::algebra::factor::roots_in;
use crate::algebra::{embedding, field_ctx, Elem, FieldCtx, Gf, Poly};
use crate::error::{Error, Result};

/// A place of the rational function field `F_q(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalPlace {
    /// The zero of a monic irreducible polynomial.
    Finite(Poly),
    Infinity,
}

impl RationalPlace {
    pub fn finite(p: Poly) -> Result<RationalPlace> {
        if !p.is_monic() || !p.is_irreducible()? {
            return Err(Error::Domain(format!("{p} is not a monic irreducible")));
        }
        Ok(RationalPlace::Finite(p))
    }

    pub fn degree(&self) -> u32 {
        match self {
            RationalPlace::Finite(p) => p.degree().unwrap_or(0) as u32,
            RationalPlace::Infinity => 1,
        }
    }
}

impl fmt::Display for RationalPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPlace::Finite(p) => write!(f, "{p}"),
            RationalPlace::Infinity => f.write_str("infinity"),
        }
    }
}

/// Decomposition of a place of `F_q(x)` in the cover: `g_count` places
/// above it, each with ramification index `e` and residue degree `f_res`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SplittingType {
    pub e: u64,
    pub f_res: u64,
    pub g_count: u64,
}

/// Splitting of `place` in `cover`.
pub fn split_place(cover: &Cover, place: &RationalPlace) -> Result<SplittingType> {
    let n = cover.degree();
    let base = cover.base();
    let st = match (cover.family(), place) {
        (Family::Kummer { m }, RationalPlace::Infinity) => {
            let r = gcd(m, cover.f().degree().unwrap_or(0) as u64);
            let lc = cover.f().leading().expect("nonzero f");
            let f_res = crate::algebra::field::residue_degree(base, lc, r)?;
            SplittingType { e: m / r, f_res, g_count: r / f_res }
        }
        (Family::ArtinSchreier, RationalPlace::Infinity) => SplittingType { e: n, f_res: 1, g_count: 1 },
        (Family::Kummer { m }, RationalPlace::Finite(p)) => {
            check_base(p, base)?;
            let (v, rest) = cover.f().valuation(p)?;
            let r = gcd(m, v as u64);
            let (residue, alpha) = residue_point(p)?;
            let emb = embedding(base, &residue)?;
            let u0 = rest.map_coeffs(&emb).eval(alpha);
            let f_res = crate::algebra::field::residue_degree(&residue, u0, r)?;
            SplittingType { e: m / r, f_res, g_count: r / f_res }
        }
        (Family::ArtinSchreier, RationalPlace::Finite(p)) => {
            check_base(p, base)?;
            let (residue, alpha) = residue_point(p)?;
            let emb = embedding(base, &residue)?;
            let c = cover.f().map_coeffs(&emb).eval(alpha);
            if residue.trace(c) == 0 {
                SplittingType { e: 1, f_res: 1, g_count: n }
            } else {
                SplittingType { e: 1, f_res: n, g_count: 1 }
            }
        }
    };
    if st.e * st.f_res * st.g_count != n {
        return Err(Error::Invariant(format!(
            "e f g = {} {} {} does not multiply to {n} at {place}",
            st.e, st.f_res, st.g_count
        )));
    }
    Ok(st)
}

fn check_base(p: &Poly, base: &Gf) -> Result<()> {
    if !std::sync::Arc::ptr_eq(p.ctx(), base) {
        return Err(Error::ContextMismatch {
            left: p.ctx().order(),
            right: base.order(),
        });
    }
    Ok(())
}

/// The residue field `F_{q^d}` of the place `p` and the canonically least
/// root of `p` in it, which stands for the class of `x`.
fn residue_point(p: &Poly) -> Result<(Gf, Elem)> {
    let base = p.ctx();
    let d = p.degree().unwrap_or(0) as u32;
    let residue = field_ctx(base.characteristic(), base.degree() * d)?;
    let alpha = *roots_in(p, &residue)?
        .first()
        .ok_or_else(|| Error::Invariant(format!("{p} has no root in its residue field")))?;
    Ok((residue, alpha))
}

/// Splitting of the finite places of degree `d` given by a point of
/// `F_{q^d}` of exact degree `d`, with the equation lifted once.
pub(crate) struct PointSplitter {
    residue: Gf,
    f: Poly,
    family: Family,
    n: u64,
    // (exponent (Q-1)/m, divisors of m) for the Kummer residue symbol
    kummer: Option<(u64, Vec<u64>)>,
}

impl PointSplitter {
    pub(crate) fn new(cover: &Cover, d: u32) -> Result<PointSplitter> {
        let base = cover.base();
        let residue = field_ctx(base.characteristic(), base.degree() * d)?;
        let f = cover.f().map_coeffs(&*embedding(base, &residue)?);
        let kummer = cover
            .m()
            .map(|m| ((residue.order() - 1) / m, divisors(m)));
        Ok(PointSplitter {
            residue,
            f,
            family: cover.family(),
            n: cover.degree(),
            kummer,
        })
    }

    pub(crate) fn residue(&self) -> &Gf {
        &self.residue
    }

    pub(crate) fn split_at(&self, alpha: Elem) -> SplittingType {
        let ctx: &FieldCtx = &self.residue;
        let c = self.f.eval(alpha);
        let n = self.n;
        match self.family {
            Family::ArtinSchreier => {
                if ctx.trace(c) == 0 {
                    SplittingType { e: 1, f_res: 1, g_count: n }
                } else {
                    SplittingType { e: 1, f_res: n, g_count: 1 }
                }
            }
            Family::Kummer { m } => {
                if c.is_zero() {
                    // f is squarefree, so the place divides f exactly once.
                    return SplittingType { e: m, f_res: 1, g_count: 1 };
                }
                let (exp, divs) = self.kummer.as_ref().expect("kummer data");
                let z = ctx.pow(c, *exp);
                let f_res = *divs
                    .iter()
                    .find(|&&j| ctx.pow(z, j) == Elem::ONE)
                    .expect("z is an m-th root of unity");
                SplittingType { e: 1, f_res, g_count: m / f_res }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_monic_irreducibles;
    use crate::error::Budget;

    fn place(cover: &Cover, s: &str) -> RationalPlace {
        RationalPlace::finite(Poly::parse(cover.base(), s).unwrap()).unwrap()
    }

    #[test]
    fn worked_splittings() {
        let k = Cover::parse("kummer:q=3,m=2,f=x^3+2*x").unwrap();
        let st = split_place(&k, &place(&k, "x")).unwrap();
        assert_eq!((st.e, st.f_res, st.g_count), (2, 1, 1));
        let st = split_place(&k, &place(&k, "x^2+1")).unwrap();
        assert_eq!((st.e, st.f_res, st.g_count), (1, 1, 2));
        let st = split_place(&k, &RationalPlace::Infinity).unwrap();
        assert_eq!((st.e, st.f_res, st.g_count), (2, 1, 1));

        let a = Cover::parse("as:q=2,f=x^3").unwrap();
        let st = split_place(&a, &place(&a, "x+1")).unwrap();
        assert_eq!((st.e, st.f_res, st.g_count), (1, 2, 1));
        let st = split_place(&a, &place(&a, "x")).unwrap();
        assert_eq!((st.e, st.f_res, st.g_count), (1, 1, 2));
        let st = split_place(&a, &RationalPlace::Infinity).unwrap();
        assert_eq!((st.e, st.f_res, st.g_count), (2, 1, 1));
    }

    #[test]
    fn square_class_by_exhaustion() {
        // u0 = f(t) in F_9 must be a square for the place x^2+1 to split.
        let k = Cover::parse("kummer:q=3,m=2,f=x^3+2*x").unwrap();
        let (f9, alpha) = residue_point(&Poly::parse(k.base(), "x^2+1").unwrap()).unwrap();
        let emb = embedding(k.base(), &f9).unwrap();
        let u0 = k.f().map_coeffs(&emb).eval(alpha);
        assert!(f9.elements().any(|y| f9.mul(y, y) == u0));
    }

    #[test]
    fn point_splitter_matches_split_place() {
        for s in [
            "kummer:q=3,m=2,f=x^3+2*x",
            "kummer:q=5,m=4,f=x^3+x+1",
            "kummer:q=7,m=3,f=x^4+3*x^2+x",
            "kummer:q=4,m=3,f=x^3+(t)*x+1",
            "as:q=2,f=x^5+x^2+1",
            "as:q=3,f=x^4+2*x+1",
            "as:q=4,f=x^3+(t+1)*x",
        ] {
            let cover = Cover::parse(s).unwrap();
            for d in 1..=3 {
                let splitter = PointSplitter::new(&cover, d).unwrap();
                for p in enumerate_monic_irreducibles(cover.base(), d, Budget::DEFAULT).unwrap() {
                    let alpha = roots_in(&p, splitter.residue()).unwrap()[0];
                    let place = RationalPlace::Finite(p);
                    assert_eq!(
                        splitter.split_at(alpha),
                        split_place(&cover, &place).unwrap(),
                        "{s} at {place}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_foreign_places() {
        let k = Cover::parse("kummer:q=3,m=2,f=x^3+2*x").unwrap();
        let f9 = field_ctx(3, 2).unwrap();
        let p = RationalPlace::Finite(Poly::parse(&f9, "x").unwrap());
        assert!(split_place(&k, &p).is_err());
        assert!(RationalPlace::finite(Poly::parse(k.base(), "x^2+2").unwrap()).is_err());
    }
}
