//! Product and quotient sets of a finite subset, the headline cardinality
//! gap `|AA^-1| - |A^-1A|`, and additive energies.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::group::GroupElement;
use crate::subset::SubsetOfGroup;

/// Which quotient set: `Right` is `AA^-1 = {a_i a_j^-1}`, `Left` is
/// `A^-1A = {a_i^-1 a_j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Cardinalities and energies of one subset, with `gap = right - left`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub right_card: u64,
    pub left_card: u64,
    pub product_card: u64,
    pub gap: i64,
    pub right_energy: u64,
    pub left_energy: u64,
    pub subset_size: u64,
}

/// All n^2 ordered products for one side, in row-major (i, j) order.
pub(crate) fn pairwise_products(a: &SubsetOfGroup, side: Side) -> Vec<GroupElement> {
    let ctx = a.context();
    let inverses: Vec<GroupElement> = a
        .elements()
        .iter()
        .map(|el| ctx.inverse(el).expect("member of own context"))
        .collect();
    let mut out = Vec::with_capacity(a.len() * a.len());
    for i in 0..a.len() {
        for j in 0..a.len() {
            let prod = match side {
                Side::Right => ctx.multiply(a.element(i), &inverses[j]),
                Side::Left => ctx.multiply(&inverses[i], a.element(j)),
            };
            out.push(prod.expect("members of one context"));
        }
    }
    out
}

/// The right quotient set `AA^-1`; always contains the identity.
pub fn right_quotient_set(a: &SubsetOfGroup) -> HashSet<GroupElement> {
    pairwise_products(a, Side::Right).into_iter().collect()
}

/// The left quotient set `A^-1A`; always contains the identity.
pub fn left_quotient_set(a: &SubsetOfGroup) -> HashSet<GroupElement> {
    pairwise_products(a, Side::Left).into_iter().collect()
}

pub fn quotient_set(a: &SubsetOfGroup, side: Side) -> HashSet<GroupElement> {
    pairwise_products(a, side).into_iter().collect()
}

/// The product set `AA = {a_i a_j}`.
pub fn product_set(a: &SubsetOfGroup) -> HashSet<GroupElement> {
    let ctx = a.context();
    let mut out = HashSet::with_capacity(a.len() * a.len());
    for x in a.elements() {
        for y in a.elements() {
            out.insert(ctx.multiply(x, y).expect("members of one context"));
        }
    }
    out
}

/// Number of quadruples `(a1, a2, a3, a4)` with `a1 a2^-1 = a3 a4^-1`
/// (right) or `a1^-1 a2 = a3^-1 a4` (left). Computed as the sum of squared
/// multiplicities over the n^2 products.
pub fn additive_energy(a: &SubsetOfGroup, side: Side) -> u64 {
    let mut counts: HashMap<GroupElement, u64> = HashMap::new();
    for prod in pairwise_products(a, side) {
        *counts.entry(prod).or_insert(0) += 1;
    }
    counts.values().map(|&c| c * c).sum()
}

/// Full report for one subset.
pub fn gap_report(a: &SubsetOfGroup) -> GapReport {
    let mut right_counts: HashMap<GroupElement, u64> = HashMap::new();
    for prod in pairwise_products(a, Side::Right) {
        *right_counts.entry(prod).or_insert(0) += 1;
    }
    let mut left_counts: HashMap<GroupElement, u64> = HashMap::new();
    for prod in pairwise_products(a, Side::Left) {
        *left_counts.entry(prod).or_insert(0) += 1;
    }
    let right_card = right_counts.len() as u64;
    let left_card = left_counts.len() as u64;
    let right_energy: u64 = right_counts.values().map(|&c| c * c).sum();
    let left_energy: u64 = left_counts.values().map(|&c| c * c).sum();
    debug_assert_eq!(right_energy, left_energy, "the two energies always agree");
    GapReport {
        right_card,
        left_card,
        product_card: product_set(a).len() as u64,
        gap: right_card as i64 - left_card as i64,
        right_energy,
        left_energy,
        subset_size: a.len() as u64,
    }
}

/// True iff `|AA| < 2|A|`, which forces a zero gap. The implication is
/// checked on every call.
pub fn small_product_criterion(a: &SubsetOfGroup) -> bool {
    let small = product_set(a).len() < 2 * a.len();
    if small {
        let report = gap_report(a);
        assert_eq!(
            report.gap,
            0,
            "|AA| < 2|A| must force |AA^-1)| = |A^-1A| (subset {})",
            a.format()
        );
    }
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupContext;

    fn parse(ctx: &GroupContext, s: &str) -> SubsetOfGroup {
        SubsetOfGroup::parse(ctx.clone(), s).unwrap()
    }

    #[test]
    fn singleton_identity() {
        let f2 = GroupContext::free(2);
        let a = parse(&f2, "e");
        assert_eq!(right_quotient_set(&a).len(), 1);
        assert_eq!(left_quotient_set(&a).len(), 1);
        assert_eq!(product_set(&a).len(), 1);
        assert_eq!(additive_energy(&a, Side::Right), 1);
        assert_eq!(additive_energy(&a, Side::Left), 1);
    }

    #[test]
    fn powers_of_x_are_balanced() {
        let f2 = GroupContext::free(2);
        let a = parse(&f2, "x, x^2");
        let products = product_set(&a);
        assert_eq!(products.len(), 3); // {x^2, x^3, x^4}
        assert!(small_product_criterion(&a));
        assert_eq!(gap_report(&a).gap, 0);
    }

    #[test]
    fn two_generators_energy_is_six() {
        // brute-force oracle over the 16 quadruples, then the implementation
        let f2 = GroupContext::free(2);
        let a = parse(&f2, "x, y");
        let ctx = a.context();
        let mut quadruples = 0u64;
        for a1 in a.elements() {
            for a2 in a.elements() {
                let p = ctx.multiply(a1, &ctx.inverse(a2).unwrap()).unwrap();
                for a3 in a.elements() {
                    for a4 in a.elements() {
                        let q = ctx.multiply(a3, &ctx.inverse(a4).unwrap()).unwrap();
                        if p == q {
                            quadruples += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(quadruples, 6);
        assert_eq!(additive_energy(&a, Side::Right), 6);
        assert_eq!(additive_energy(&a, Side::Left), 6);
    }

    #[test]
    fn symmetric_subset_has_equal_sides() {
        let f2 = GroupContext::free(2);
        let a = parse(&f2, "x, x^-1, y, y^-1");
        let report = gap_report(&a);
        assert_eq!(report.gap, 0);
        assert_eq!(
            right_quotient_set(&a),
            left_quotient_set(&a.inverse_subset())
        );
    }

    #[test]
    fn gap_negates_under_inversion() {
        let f3 = GroupContext::free(3);
        let a = parse(&f3, "x, x z, y^-1, y^-1 x^-1 y^-1, y^-1 z");
        let r = gap_report(&a);
        let r_inv = gap_report(&a.inverse_subset());
        assert_eq!(r.gap, -r_inv.gap);
        assert_eq!(r.right_energy, r.left_energy);
    }

    #[test]
    fn report_serializes_flat() {
        let f2 = GroupContext::free(2);
        let report = gap_report(&parse(&f2, "x, y"));
        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "right_card",
            "left_card",
            "product_card",
            "gap",
            "right_energy",
            "left_energy",
            "subset_size",
        ] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
        assert_eq!(json.as_object().unwrap().len(), 7);
    }
}
