//! Exhaustive subset searches over small finite groups.
//!
//! Subsets are enumerated by size, then lexicographically by sorted element
//! indices, so the first reported witness is canonical. Work is split into
//! strata by smallest element and merged in stratum order, which keeps the
//! verdict independent of the worker count. Since the gap of `A^-1` negates
//! the gap of `A`, only subsets that are lexicographically no later than
//! their inverse image need evaluating; the skipped half can never hold the
//! first witness.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combi::{binomial, scan_combinations};
use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement, Permutation};
use crate::subset::SubsetOfGroup;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on enumerated subsets per invocation: minutes, not hours.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 28;
/// Hard guard regardless of the requested budget.
const HARD_BUDGET: u64 = 1 << 32;

/// Outcome of an exhaustive scan of all subsets up to a size bound.
#[derive(Debug, Clone)]
pub struct SearchVerdict {
    pub group: String,
    pub max_size_checked: usize,
    pub min_asymmetric_size: Option<usize>,
    pub witness: Option<SubsetOfGroup>,
    pub subsets_examined: u64,
}

impl Serialize for SearchVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("SearchVerdict", 5)?;
        state.serialize_field("group", &self.group)?;
        state.serialize_field("max_size_checked", &self.max_size_checked)?;
        state.serialize_field("min_asymmetric_size", &self.min_asymmetric_size)?;
        let witness: Option<Vec<String>> = self.witness.as_ref().map(|w| {
            w.elements()
                .iter()
                .map(|el| w.context().format_element(el))
                .collect()
        });
        state.serialize_field("witness", &witness)?;
        state.serialize_field("subsets_examined", &self.subsets_examined)?;
        state.end()
    }
}

/// Result of sweeping the small-size regimes where quotient sets provably
/// balance: size <= 3 in any group, size <= 4 when no element has order 2.
#[derive(Debug, Clone, Serialize)]
pub struct SizeBoundReport {
    pub group: String,
    pub order: u64,
    pub order2_free: bool,
    pub max_size_swept: usize,
    pub all_balanced: bool,
    /// A balanced-size counterexample would falsify the implementation, not
    /// the statement; reported verbatim with its gap.
    pub counterexample: Option<(Vec<String>, i64)>,
    pub subsets_examined: u64,
}

/// A finite group flattened to index arithmetic; orders stay within 128 so
/// quotient sets fit in one 128-bit mask.
struct IndexedGroup {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

const MAX_INDEXED_ORDER: usize = 128;

impl IndexedGroup {
    fn from_context(g: &GroupContext) -> Result<(Self, Vec<GroupElement>)> {
        let unsupported = |reason: String| Error::UnsupportedSpec {
            spec: g.describe(),
            reason,
        };
        let elements = g
            .elements()
            .ok_or_else(|| unsupported("exhaustive search needs a finite carrier".into()))?;
        let order = elements.len();
        if order > MAX_INDEXED_ORDER {
            return Err(unsupported(format!(
                "order {order} exceeds the search cap of {MAX_INDEXED_ORDER}"
            )));
        }
        let index_of = |el: &GroupElement| -> u16 {
            match el {
                GroupElement::Cayley(idx) => *idx as u16,
                GroupElement::Perm(p) => permutation_rank(p) as u16,
                _ => unreachable!("finite carriers only"),
            }
        };
        let mut mul = vec![0u16; order * order];
        let mut inv = vec![0u16; order];
        for (i, a) in elements.iter().enumerate() {
            inv[i] = index_of(&g.inverse(a).expect("member"));
            for (j, b) in elements.iter().enumerate() {
                mul[i * order + j] = index_of(&g.multiply(a, b).expect("members"));
            }
        }
        Ok((IndexedGroup { order, mul, inv }, elements))
    }

    /// `|AA^-1| - |A^-1A|` for a subset given by sorted indices.
    fn gap(&self, subset: &[usize]) -> i64 {
        let mut right: u128 = 0;
        let mut left: u128 = 0;
        for &a in subset {
            let inv_a = self.inv[a] as usize;
            for &b in subset {
                right |= 1u128 << self.mul[a * self.order + self.inv[b] as usize];
                left |= 1u128 << self.mul[inv_a * self.order + b];
            }
        }
        right.count_ones() as i64 - left.count_ones() as i64
    }

    /// True iff the sorted inverse image of `subset` is lexicographically
    /// earlier, in which case that image was already evaluated.
    fn inverse_comes_first(&self, subset: &[usize]) -> bool {
        let mut inv: Vec<usize> = subset.iter().map(|&a| self.inv[a] as usize).collect();
        inv.sort_unstable();
        inv.as_slice() < subset
    }
}

/// Lexicographic rank of a permutation among all of its degree, matching
/// the enumeration order of [`GroupContext::elements`].
fn permutation_rank(p: &Permutation) -> usize {
    let images = p.images();
    let n = images.len();
    let mut rank = 0usize;
    let mut factorial = 1usize;
    for k in 1..n {
        factorial *= k;
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    for (pos, &image) in images.iter().enumerate() {
        let smaller = remaining.iter().position(|&v| v == image).unwrap();
        rank += smaller * factorial;
        remaining.remove(smaller);
        if n - pos > 1 {
            factorial /= n - pos - 1;
        }
    }
    rank
}

struct StratumOutcome {
    hit: Option<(Vec<usize>, i64)>,
    evaluated: u64,
}

/// Scans one stratum (subsets of `size` whose smallest index is `first`)
/// in lexicographic order, stopping at the first asymmetric subset.
fn scan_stratum(indexed: &IndexedGroup, size: usize, first: usize) -> StratumOutcome {
    let mut outcome = StratumOutcome {
        hit: None,
        evaluated: 0,
    };
    let mut buffer = Vec::with_capacity(size);
    let consider = |subset: &[usize], outcome: &mut StratumOutcome| -> bool {
        if indexed.inverse_comes_first(subset) {
            return false;
        }
        outcome.evaluated += 1;
        let gap = indexed.gap(subset);
        if gap != 0 {
            outcome.hit = Some((subset.to_vec(), gap));
            true
        } else {
            false
        }
    };
    if size == 1 {
        consider(&[first], &mut outcome);
    } else {
        scan_combinations(indexed.order, size - 1, first + 1, |rest| {
            buffer.clear();
            buffer.push(first);
            buffer.extend_from_slice(rest);
            consider(&buffer, &mut outcome)
        });
    }
    outcome
}

/// Scans every subset of size 1..=`max_size` with the default budget.
pub fn exhaustive_balance_check(g: &GroupContext, max_size: usize) -> Result<SearchVerdict> {
    exhaustive_balance_check_with_budget(g, max_size, DEFAULT_SEARCH_BUDGET)
}

/// As [`exhaustive_balance_check`] with an explicit budget on enumerated
/// subsets. The budget is applied at whole-size granularity so the cutoff
/// does not depend on thread count; exceeding it reports the partial scan.
pub fn exhaustive_balance_check_with_budget(
    g: &GroupContext,
    max_size: usize,
    budget: u64,
) -> Result<SearchVerdict> {
    let (indexed, elements) = IndexedGroup::from_context(g)?;
    let order = indexed.order;
    let max_size = max_size.min(order);
    let budget = budget.min(HARD_BUDGET);

    let mut enumerated: u64 = 0;
    let mut examined: u64 = 0;
    for size in 1..=max_size {
        let at_this_size = binomial(order as u64, size as u64);
        if enumerated.saturating_add(at_this_size) > budget {
            return Err(Error::BudgetExceeded {
                scanned: enumerated,
                requested: budget,
                completed_size: size - 1,
            });
        }
        enumerated += at_this_size;

        let strata: Vec<usize> = (0..=order.saturating_sub(size)).collect();
        let outcomes: Vec<StratumOutcome>;
        #[cfg(feature = "parallel")]
        {
            outcomes = strata
                .par_iter()
                .map(|&first| scan_stratum(&indexed, size, first))
                .collect();
        }
        #[cfg(not(feature = "parallel"))]
        {
            outcomes = strata
                .iter()
                .map(|&first| scan_stratum(&indexed, size, first))
                .collect();
        }

        examined += outcomes.iter().map(|o| o.evaluated).sum::<u64>();
        if let Some((indices, _gap)) = outcomes.into_iter().find_map(|o| o.hit) {
            let witness = SubsetOfGroup::new(
                g.clone(),
                indices.iter().map(|&i| elements[i].clone()).collect(),
            )?;
            return Ok(SearchVerdict {
                group: g.describe(),
                max_size_checked: max_size,
                min_asymmetric_size: Some(size),
                witness: Some(witness),
                subsets_examined: examined,
            });
        }
    }
    Ok(SearchVerdict {
        group: g.describe(),
        max_size_checked: max_size,
        min_asymmetric_size: None,
        witness: None,
        subsets_examined: examined,
    })
}

/// Sweeps the provably balanced size regimes: size <= 3 for any group and
/// size <= 4 when the group has no order-2 elements. The sweep sizes are
/// capped at desk scale (order <= 24, and <= 21 for the size-4 sweep).
pub fn verify_size_bounds(g: &GroupContext) -> Result<SizeBoundReport> {
    let order = g.order().ok_or_else(|| Error::UnsupportedSpec {
        spec: g.describe(),
        reason: "size-bound sweeps need a finite carrier".to_string(),
    })?;
    if order > 24 {
        return Err(Error::UnsupportedSpec {
            spec: g.describe(),
            reason: format!("order {order} exceeds the sweep cap of 24"),
        });
    }
    let order2_free = !g.has_order_two();
    let max_size = if order2_free && order <= 21 { 4 } else { 3 };
    let verdict = exhaustive_balance_check(g, max_size)?;
    let counterexample = verdict.witness.as_ref().map(|w| {
        let names = w
            .elements()
            .iter()
            .map(|el| w.context().format_element(el))
            .collect();
        (names, crate::quotient::gap_report(w).gap)
    });
    Ok(SizeBoundReport {
        group: g.describe(),
        order,
        order2_free,
        max_size_swept: max_size,
        all_balanced: verdict.min_asymmetric_size.is_none(),
        counterexample,
        subsets_examined: verdict.subsets_examined,
    })
}

/// The four permutations of eight points whose quotient sets have sizes 10
/// and 7; they generate a copy of the quasidihedral group of order 16
/// inside S8.
pub fn example_witness_s8() -> SubsetOfGroup {
    let degree = 8;
    let cycles: [&[&[usize]]; 4] = [
        &[&[1, 5], &[2, 6], &[3, 7], &[4, 8]],
        &[&[1, 2, 5, 6], &[3, 8, 7, 4]],
        &[&[1, 7], &[3, 5], &[4, 8]],
        &[&[1, 8, 7, 6, 5, 4, 3, 2]],
    ];
    let elements = cycles
        .iter()
        .map(|cycle_list| {
            let cycles: Vec<Vec<usize>> = cycle_list.iter().map(|c| c.to_vec()).collect();
            GroupElement::Perm(Permutation::from_cycles(degree, &cycles).expect("valid cycles"))
        })
        .collect();
    SubsetOfGroup::new(GroupContext::SymmetricPerm { degree }, elements)
        .expect("distinct permutations")
}
