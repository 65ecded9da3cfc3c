use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::arith::divisors;
use crate::algebra::{count_monic_irreducibles, enumerate_monic_irreducibles, field_of_order};
use crate::decimal;
use crate::error::{Budget, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrRow {
    pub d: u64,
    /// Möbius formula value.
    #[serde(serialize_with = "biguint")]
    pub formula: BigUint,
    /// Number found by enumeration, when it fits in the budget.
    pub enumerated: Option<u64>,
}

fn biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    decimal::serialize(&v.clone().into(), s)
}

impl IrrRow {
    pub fn agrees(&self) -> bool {
        self.enumerated.is_none_or(|e| BigUint::from(e) == self.formula)
    }
}

/// Irreducible counts for degrees `1..=m` over `F_q`, by formula and, where
/// `q^d` fits in the budget, by enumeration.
pub fn irr_count(q: u64, m: u64, budget: Budget) -> Result<Vec<IrrRow>> {
    let base = field_of_order(q)?;
    let mut rows = Vec::new();
    for d in 1..=m {
        let formula = count_monic_irreducibles(q, d);
        let enumerated = match u32::try_from(d) {
            Ok(d32) if budget.check((q as u128).saturating_pow(d32)).is_ok() => {
                enumerate_monic_irreducibles(&base, d32, budget)
                    .ok()
                    .map(|v| v.len() as u64)
            }
            _ => None,
        };
        rows.push(IrrRow { d, formula, enumerated });
    }
    Ok(rows)
}

/// `sum_{d | m} d psi(d) = q^m`.
pub fn necklace_identity(q: u64, m: u64) -> bool {
    let total: BigUint = divisors(m)
        .into_iter()
        .map(|d| count_monic_irreducibles(q, d) * d)
        .sum();
    total == BigUint::from(q).pow(m as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(rows: &[IrrRow]) -> Vec<u64> {
        rows.iter().map(|r| u64::try_from(&r.formula).unwrap()).collect()
    }

    #[test]
    fn examples() {
        let rows = irr_count(2, 4, Budget::DEFAULT).unwrap();
        assert_eq!(formula(&rows), [2, 1, 2, 3]);
        assert!(rows.iter().all(|r| r.enumerated.is_some() && r.agrees()));
        assert_eq!(formula(&irr_count(2, 1, Budget::DEFAULT).unwrap()), [2]);
        assert_eq!(formula(&irr_count(3, 3, Budget::DEFAULT).unwrap()), [3, 3, 8]);
    }

    #[test]
    fn enumeration_skipped_beyond_budget() {
        let rows = irr_count(2, 12, Budget(1 << 8)).unwrap();
        assert!(rows[7].enumerated.is_some());
        assert!(rows[8].enumerated.is_none());
    }

    #[test]
    fn identity() {
        for q in [2, 3, 4, 5] {
            for m in 1..=12 {
                assert!(necklace_identity(q, m), "q = {q}, m = {m}");
            }
        }
    }
}
