//! Finite groups given by an explicit multiplication table.

use crate::error::{Error, Result};

/// A finite group as a validated Latin-square multiplication table.
/// `table[a * order + b]` is the index of the product `a * b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    name: String,
    order: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
    names: Vec<String>,
}

/// Full associativity checking is cubic; above this order only seeded spot
/// checks run.
const EAGER_VALIDATION_ORDER: usize = 64;

impl CayleyTable {
    /// Validates the group axioms and locates the identity and inverses.
    pub fn new(
        name: impl Into<String>,
        element_names: Vec<String>,
        table: Vec<u32>,
    ) -> Result<Self> {
        let name = name.into();
        let order = element_names.len();
        let fail = |reason: String| Error::InvalidTable {
            group: name.clone(),
            reason,
        };
        if order == 0 {
            return Err(fail("empty element list".into()));
        }
        if table.len() != order * order {
            return Err(fail(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if table.iter().any(|&v| v as usize >= order) {
            return Err(fail("table entry out of range".into()));
        }

        // Latin square: every row and column is a permutation.
        for i in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for j in 0..order {
                let r = table[i * order + j] as usize;
                let c = table[j * order + i] as usize;
                if row[r] || col[c] {
                    return Err(fail(format!("row/column {i} repeats an entry")));
                }
                row[r] = true;
                col[c] = true;
            }
        }

        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|a| {
                    table[e * order + a] as usize == a && table[a * order + e] as usize == a
                })
            })
            .ok_or_else(|| fail("no two-sided identity".into()))?;

        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| {
                    table[a * order + b] as usize == identity
                        && table[b * order + a] as usize == identity
                })
                .ok_or_else(|| fail(format!("element {a} has no two-sided inverse")))?;
            inverse[a] = inv as u32;
        }

        let group = CayleyTable {
            name,
            order,
            table,
            identity: identity as u32,
            inverse,
            names: element_names,
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let fail = |a: usize, b: usize, c: usize| Error::InvalidTable {
            group: self.name.clone(),
            reason: format!("associativity fails at ({a}, {b}, {c})"),
        };
        let n = self.order;
        if n <= EAGER_VALIDATION_ORDER {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a as u32, b as u32);
                    for c in 0..n {
                        if self.mul(ab, c as u32)
                            != self.mul(a as u32, self.mul(b as u32, c as u32))
                        {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            // deterministic spot checks on a fixed stride
            let mut state = 0x9e37_79b9_u64;
            for _ in 0..10_000 {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let a = (state >> 33) as usize % n;
                let b = (state >> 17) as usize % n;
                let c = state as usize % n;
                let ab = self.mul(a as u32, b as u32);
                if self.mul(ab, c as u32) != self.mul(a as u32, self.mul(b as u32, c as u32)) {
                    return Err(fail(a, b, c));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inverse_of(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// True iff some non-identity element is its own inverse.
    pub fn has_order_two_element(&self) -> bool {
        self.inverse
            .iter()
            .enumerate()
            .any(|(i, &inv)| i as u32 != self.identity && inv == i as u32)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32)
            .all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    /// Exact-name lookup; `e` is accepted as an alias for the identity.
    pub fn index_of_name(&self, name: &str) -> Option<u32> {
        if let Some(idx) = self.names.iter().position(|n| n == name) {
            return Some(idx as u32);
        }
        (name == "e").then_some(self.identity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> CayleyTable {
        let names = (0..n).map(|i| format!("g^{i}")).collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u32;
            }
        }
        CayleyTable::new(format!("C{n}"), names, table).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let c5 = cyclic(5);
        assert_eq!(c5.identity(), 0);
        assert_eq!(c5.mul(2, 4), 1);
        assert_eq!(c5.inverse_of(2), 3);
        assert!(!c5.has_order_two_element());
        assert!(c5.is_abelian());
        let c6 = cyclic(6);
        assert!(c6.has_order_two_element());
    }

    #[test]
    fn rejects_non_latin_square() {
        let names = vec!["e".to_string(), "a".to_string()];
        let err = CayleyTable::new("bad", names, vec![0, 0, 0, 0]);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // order-5 quasigroup: a*b = 2a+b mod 5 is a Latin square without identity
        let n = 5;
        let names = (0..n).map(|i| i.to_string()).collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((2 * a + b) % n) as u32;
            }
        }
        assert!(CayleyTable::new("quasigroup", names, table).is_err());
    }
}
