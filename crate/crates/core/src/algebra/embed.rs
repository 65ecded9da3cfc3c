//! Canonical embeddings `F_{p^n} -> F_{p^{nd}}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::factor;
use super::field::{Elem, Gf};
use crate::error::{Error, Result};

/// The ring map sending the generator `t` of the source to the
/// canonically least root of the source modulus in the target.
pub struct Embedding {
    source: Gf,
    target: Gf,
    image_of_generator: Elem,
    basis_images: Vec<Elem>,
    inverse: OnceLock<HashMap<Elem, Elem>>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Embedding({} -> {}, t -> {:?})",
            self.source, self.target, self.image_of_generator
        )
    }
}

type Registry = Mutex<HashMap<(u64, u32, u32), Arc<OnceLock<Arc<Embedding>>>>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

/// The canonical embedding of `source` into `target`, memoized.
pub fn embedding(source: &Gf, target: &Gf) -> Result<Arc<Embedding>> {
    let p = source.characteristic();
    if target.characteristic() != p || !target.degree().is_multiple_of(source.degree()) {
        return Err(Error::Domain(format!(
            "{source} does not embed into {target}"
        )));
    }
    let key = (p, source.degree(), target.degree());
    let cell = {
        let mut map = registry().lock().expect("embedding registry poisoned");
        map.entry(key).or_default().clone()
    };
    if let Some(e) = cell.get() {
        return Ok(e.clone());
    }
    let built = Arc::new(Embedding::build(source, target)?);
    Ok(cell.get_or_init(|| built).clone())
}

impl Embedding {
    fn build(source: &Gf, target: &Gf) -> Result<Embedding> {
        let n = source.degree();
        let image_of_generator = if n == 1 {
            Elem::ZERO
        } else {
            factor::roots_in(&source.modulus_poly(), target)?
                .first()
                .copied()
                .ok_or_else(|| Error::Invariant("modulus has no root in the extension".into()))?
        };
        let mut basis_images = Vec::with_capacity(n as usize);
        let mut acc = Elem::ONE;
        for _ in 0..n {
            basis_images.push(acc);
            acc = target.mul(acc, image_of_generator);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            image_of_generator,
            basis_images,
            inverse: OnceLock::new(),
        })
    }

    pub fn source(&self) -> &Gf {
        &self.source
    }

    pub fn target(&self) -> &Gf {
        &self.target
    }

    pub fn image_of_generator(&self) -> Elem {
        self.image_of_generator
    }

    pub fn apply(&self, a: Elem) -> Elem {
        if self.source.is_prime_field() {
            return a;
        }
        let t = &self.target;
        let mut out = Elem::ZERO;
        for (i, &b) in self.basis_images.iter().enumerate() {
            let d = self.source.digit(a, i as u32);
            if d != 0 {
                out = t.add(out, t.scale(b, d));
            }
        }
        out
    }

    /// The source element mapping to `b`, if `b` lies in the image.
    pub fn preimage(&self, b: Elem) -> Option<Elem> {
        if self.source.is_prime_field() {
            return (self.target.index(b) < self.source.order()).then_some(b);
        }
        self.inverse
            .get_or_init(|| {
                self.source
                    .elements()
                    .map(|a| (self.apply(a), a))
                    .collect()
            })
            .get(&b)
            .copied()
    }
}
