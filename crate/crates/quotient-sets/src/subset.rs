//! Finite subsets of a group: an ordered list of distinct elements.
//!
//! Element order is preserved from the caller so that vertex indices in
//! difference graphs (and everything exported from them) are reproducible.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetOfGroup {
    context: GroupContext,
    elements: Vec<GroupElement>,
}

impl SubsetOfGroup {
    /// Builds a subset, rejecting foreign elements, duplicates, and emptiness.
    pub fn new(context: GroupContext, elements: Vec<GroupElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = HashSet::with_capacity(elements.len());
        for el in &elements {
            if !context.contains(el) {
                return Err(Error::ContextMismatch(format!(
                    "element {} does not belong to {}",
                    context.format_element(el),
                    context
                )));
            }
            if !seen.insert(el.clone()) {
                return Err(Error::DuplicateElement(context.format_element(el)));
            }
        }
        Ok(SubsetOfGroup { context, elements })
    }

    /// Parses a comma-separated list of element literals.
    pub fn parse(context: GroupContext, input: &str) -> Result<Self> {
        let elements = input
            .split(',')
            .map(|part| context.parse_element(part))
            .collect::<Result<Vec<_>>>()?;
        SubsetOfGroup::new(context, elements)
    }

    pub fn context(&self) -> &GroupContext {
        &self.context
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn element(&self, index: usize) -> &GroupElement {
        &self.elements[index]
    }

    /// A^-1 with matching order: the i-th element is `a_i^-1`.
    pub fn inverse_subset(&self) -> SubsetOfGroup {
        let elements = self
            .elements
            .iter()
            .map(|el| self.context.inverse(el).expect("member of own context"))
            .collect();
        SubsetOfGroup {
            context: self.context.clone(),
            elements,
        }
    }

    /// Comma-separated element literals; re-parses to the same subset.
    pub fn format(&self) -> String {
        self.elements
            .iter()
            .map(|el| self.context.format_element(el))
            .collect::<Vec<_>>()
            .join(", ")
    }
}
