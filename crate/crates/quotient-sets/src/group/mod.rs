//! Uniform element algebra over every group carrier the library supports:
//! free groups, the infinite dihedral group, symmetric groups acting as
//! permutations, and finite groups given by multiplication tables.

pub mod cayley;
pub mod dihedral;
pub mod perm;
pub mod word;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
pub use cayley::CayleyTable;
pub use dihedral::DihedralElement;
pub use perm::Permutation;
pub use word::{ReducedWord, Syllable};

/// A group to compute in. Contexts are cheap to clone and immutable after
/// construction; elements of different contexts never mix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupContext {
    /// Free group of the given rank.
    Free { rank: usize },
    /// The infinite dihedral group.
    InfDihedral,
    /// The full symmetric group on `degree` points, as permutations.
    SymmetricPerm { degree: usize },
    /// A finite group with an explicit multiplication table.
    Cayley(Arc<CayleyTable>),
}

/// A canonical element of some [`GroupContext`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Word(ReducedWord),
    Dihedral(DihedralElement),
    Perm(Permutation),
    Cayley(u32),
}

/// Opaque hashable key; two keys compare equal iff the underlying elements
/// are equal in the group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(GroupElement);

impl GroupContext {
    pub fn free(rank: usize) -> Self {
        GroupContext::Free { rank }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupContext::Free { rank } => GroupElement::Word(ReducedWord::identity(*rank)),
            GroupContext::InfDihedral => GroupElement::Dihedral(DihedralElement::identity()),
            GroupContext::SymmetricPerm { degree } => {
                GroupElement::Perm(Permutation::identity(*degree))
            }
            GroupContext::Cayley(table) => GroupElement::Cayley(table.identity()),
        }
    }

    /// True iff the element is a canonical element of this context.
    pub fn contains(&self, a: &GroupElement) -> bool {
        match (self, a) {
            (GroupContext::Free { rank }, GroupElement::Word(w)) => w.rank() == *rank,
            (GroupContext::InfDihedral, GroupElement::Dihedral(_)) => true,
            (GroupContext::SymmetricPerm { degree }, GroupElement::Perm(p)) => {
                p.degree() == *degree
            }
            (GroupContext::Cayley(table), GroupElement::Cayley(idx)) => {
                (*idx as usize) < table.order()
            }
            _ => false,
        }
    }

    fn check_member(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "element {a:?} does not belong to {}",
                self.describe()
            )))
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (a, b) {
            (GroupElement::Word(x), GroupElement::Word(y)) => GroupElement::Word(x.mul(y)),
            (GroupElement::Dihedral(x), GroupElement::Dihedral(y)) => {
                GroupElement::Dihedral(x.mul(y))
            }
            (GroupElement::Perm(x), GroupElement::Perm(y)) => GroupElement::Perm(x.mul(y)),
            (GroupElement::Cayley(x), GroupElement::Cayley(y)) => {
                let GroupContext::Cayley(table) = self else {
                    unreachable!()
                };
                GroupElement::Cayley(table.mul(*x, *y))
            }
            _ => unreachable!("membership checked above"),
        })
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        Ok(match a {
            GroupElement::Word(w) => GroupElement::Word(w.inverse()),
            GroupElement::Dihedral(d) => GroupElement::Dihedral(d.inverse()),
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            GroupElement::Cayley(idx) => {
                let GroupContext::Cayley(table) = self else {
                    unreachable!()
                };
                GroupElement::Cayley(table.inverse_of(*idx))
            }
        })
    }

    /// Whether the group has any element of order exactly 2. Free groups are
    /// torsion-free; symmetric groups on 2+ points contain transpositions;
    /// finite carriers scan their inverse array.
    pub fn has_order_two(&self) -> bool {
        match self {
            GroupContext::Free { .. } => false,
            GroupContext::InfDihedral => true,
            GroupContext::SymmetricPerm { degree } => *degree >= 2,
            GroupContext::Cayley(table) => table.has_order_two_element(),
        }
    }

    pub fn canonical_key(&self, a: &GroupElement) -> Result<CanonicalKey> {
        self.check_member(a)?;
        Ok(CanonicalKey(a.clone()))
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupContext::Free { rank } => *rank <= 1,
            GroupContext::InfDihedral => false,
            GroupContext::SymmetricPerm { degree } => *degree <= 2,
            GroupContext::Cayley(table) => table.is_abelian(),
        }
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupContext::Free { rank } => (*rank == 0).then_some(1),
            GroupContext::InfDihedral => None,
            GroupContext::SymmetricPerm { degree } => {
                (1..=*degree as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
            }
            GroupContext::Cayley(table) => Some(table.order() as u64),
        }
    }

    /// Every element of a finite carrier, in canonical index order. Symmetric
    /// contexts enumerate image arrays lexicographically (identity first).
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            GroupContext::Cayley(table) => Some(
                (0..table.order() as u32)
                    .map(GroupElement::Cayley)
                    .collect(),
            ),
            GroupContext::SymmetricPerm { degree } => {
                if *degree > 8 {
                    return None;
                }
                let mut out = Vec::new();
                let mut images: Vec<usize> = (0..*degree).collect();
                loop {
                    out.push(GroupElement::Perm(
                        Permutation::new(images.clone()).expect("valid permutation"),
                    ));
                    if !next_permutation(&mut images) {
                        break;
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    pub fn parse_element(&self, input: &str) -> Result<GroupElement> {
        let trimmed = input.trim();
        match self {
            GroupContext::Free { rank } => {
                Ok(GroupElement::Word(ReducedWord::parse(trimmed, *rank)?))
            }
            GroupContext::InfDihedral => {
                Ok(GroupElement::Dihedral(DihedralElement::parse(trimmed)?))
            }
            GroupContext::SymmetricPerm { degree } => {
                Ok(GroupElement::Perm(Permutation::parse(trimmed, *degree)?))
            }
            GroupContext::Cayley(table) => table
                .index_of_name(trimmed)
                .map(GroupElement::Cayley)
                .ok_or_else(|| Error::Malformed {
                    token: trimmed.to_string(),
                    reason: format!("not an element of {}", table.name()),
                }),
        }
    }

    pub fn format_element(&self, a: &GroupElement) -> String {
        match a {
            GroupElement::Word(w) => w.to_string(),
            GroupElement::Dihedral(d) => d.to_string(),
            GroupElement::Perm(p) => p.to_string(),
            GroupElement::Cayley(idx) => match self {
                GroupContext::Cayley(table) => table.element_name(*idx).to_string(),
                _ => format!("#{idx}"),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GroupContext::Free { rank } => format!("F{rank}"),
            GroupContext::InfDihedral => "Dinf".to_string(),
            GroupContext::SymmetricPerm { degree } => format!("S{degree}"),
            GroupContext::Cayley(table) => table.name().to_string(),
        }
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// In-place next lexicographic permutation; false when wrapped around.
fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}
