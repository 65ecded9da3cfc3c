use std::fmt;

use serde::Serialize;

use crate::algebra::{embedding, field_ctx, field_of_order, Gf, Poly};
use crate::error::{Error, Result};

/// The two cyclic families `y^m = f(x)` and `y^p - y = f(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Kummer { m: u64 },
    ArtinSchreier,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Kummer { .. } => "kummer",
            Family::ArtinSchreier => "artin-schreier",
        }
    }
}

/// An unvalidated cover description.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub base: Gf,
    pub family: Family,
    pub f: Poly,
}

impl CoverSpec {
    pub fn kummer(m: u64, f: Poly) -> CoverSpec {
        CoverSpec {
            base: f.ctx().clone(),
            family: Family::Kummer { m },
            f,
        }
    }

    pub fn artin_schreier(f: Poly) -> CoverSpec {
        CoverSpec {
            base: f.ctx().clone(),
            family: Family::ArtinSchreier,
            f,
        }
    }

    /// Parses `kummer:q=3,m=2,f=x^3+2*x` or `as:q=2,f=x^3`.
    pub fn parse(text: &str) -> Result<CoverSpec> {
        let text = text.trim();
        let (tag, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing family tag in {text:?}")))?;
        let (mut q, mut m, mut f) = (None, None, None);
        for pair in rest.split(',') {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {pair:?}")))?;
            let slot = match key.trim() {
                "q" => &mut q,
                "m" => &mut m,
                "f" => &mut f,
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            };
            if slot.replace(value.trim()).is_some() {
                return Err(Error::Parse(format!("duplicate key {key:?}")));
            }
        }
        let q: u64 = q
            .ok_or_else(|| Error::Parse("missing q".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad q: {e}")))?;
        let base = field_of_order(q).map_err(|e| Error::Validation(format!("q = {q}: {e}")))?;
        let f = Poly::parse(&base, f.ok_or_else(|| Error::Parse("missing f".into()))?)?;
        match (tag.trim(), m) {
            ("kummer", Some(m)) => {
                let m = m.parse().map_err(|e| Error::Parse(format!("bad m: {e}")))?;
                Ok(CoverSpec::kummer(m, f))
            }
            ("kummer", None) => Err(Error::Parse("kummer cover needs m".into())),
            ("as", None) => Ok(CoverSpec::artin_schreier(f)),
            ("as", Some(_)) => Err(Error::Parse("artin-schreier cover takes no m".into())),
            (other, _) => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }

    /// Checks every family invariant.
    pub fn validate(self) -> Result<Cover> {
        let q = self.base.order();
        let p = self.base.characteristic();
        let deg = self.f.degree().unwrap_or(0);
        if self.f.is_constant() {
            return Err(Error::Validation(format!("f = {} is constant", self.f)));
        }
        if !self.f.is_monic() {
            return Err(Error::Validation(format!("f = {} is not monic", self.f)));
        }
        match self.family {
            Family::Kummer { m } => {
                if m < 2 {
                    return Err(Error::Validation(format!("m = {m} must be at least 2")));
                }
                if !(q - 1).is_multiple_of(m) {
                    return Err(Error::Validation(format!("m = {m} does not divide q - 1 = {}", q - 1)));
                }
                if !self.f.is_squarefree() {
                    return Err(Error::Validation(format!("f = {} is not squarefree", self.f)));
                }
            }
            Family::ArtinSchreier => {
                if (deg as u64).is_multiple_of(p) {
                    return Err(Error::Validation(format!(
                        "deg f = {deg} is divisible by the characteristic {p}"
                    )));
                }
            }
        }
        Ok(Cover { spec: self })
    }
}

impl fmt::Display for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.base.order();
        match self.family {
            Family::Kummer { m } => write!(f, "kummer:q={q},m={m},f={}", self.f),
            Family::ArtinSchreier => write!(f, "as:q={q},f={}", self.f),
        }
    }
}

/// A validated cover `K / F_q(x)`.
#[derive(Clone, Debug)]
pub struct Cover {
    spec: CoverSpec,
}

impl Cover {
    pub fn parse(text: &str) -> Result<Cover> {
        CoverSpec::parse(text)?.validate()
    }

    pub fn spec(&self) -> &CoverSpec {
        &self.spec
    }

    pub fn base(&self) -> &Gf {
        &self.spec.base
    }

    /// Order of the constant field.
    pub fn q(&self) -> u64 {
        self.spec.base.order()
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn f(&self) -> &Poly {
        &self.spec.f
    }

    pub fn m(&self) -> Option<u64> {
        match self.spec.family {
            Family::Kummer { m } => Some(m),
            Family::ArtinSchreier => None,
        }
    }

    /// `[K : F_q(x)]`.
    pub fn degree(&self) -> u64 {
        match self.spec.family {
            Family::Kummer { m } => m,
            Family::ArtinSchreier => self.spec.base.characteristic(),
        }
    }

    /// The same equation over `F_{q^k}`.
    pub fn extend_constants(&self, k: u32) -> Result<Cover> {
        let base = self.base();
        let ext = field_ctx(base.characteristic(), base.degree() * k)?;
        let f = self.f().map_coeffs(&*embedding(base, &ext)?);
        CoverSpec {
            base: ext,
            family: self.spec.family,
            f,
        }
        .validate()
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        assert!(Cover::parse("kummer:q=3,m=2,f=x^3+2*x").is_ok());
        assert!(matches!(Cover::parse("kummer:q=2,m=2,f=x"), Err(Error::Validation(_))));
        assert!(matches!(Cover::parse("as:q=2,f=x^2"), Err(Error::Validation(_))));
        assert!(matches!(Cover::parse("kummer:q=5,m=2,f=x^2"), Err(Error::Validation(_))));
        assert!(matches!(Cover::parse("as:q=3,f=2*x^2"), Err(Error::Validation(_))));
        assert!(matches!(Cover::parse("as:q=3,f=1"), Err(Error::Validation(_))));
        assert!(matches!(Cover::parse("as:q=6,f=x^3"), Err(Error::Validation(_))));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "kummer:q=3,f=x",
            "as:q=2,m=2,f=x^3",
            "elliptic:q=2,f=x^3",
            "as:q=2,f=x^3,f=x",
            "as:q=2,g=1,f=x^3",
            "as q=2",
            "as:q=2,f=x^3+",
        ] {
            assert!(matches!(CoverSpec::parse(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["kummer:q=3,m=2,f=x^3+2*x", "as:q=2,f=x^3", "as:q=4,f=x^5+(t)*x^2+1"] {
            assert_eq!(Cover::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn constant_extension_keeps_the_equation() {
        let c = Cover::parse("kummer:q=3,m=2,f=x^3+2*x").unwrap();
        let e = c.extend_constants(2).unwrap();
        assert_eq!(e.q(), 9);
        assert_eq!(e.f().to_string(), "x^3+2*x");
    }
}
