//! Left and right quotient sets of finite subsets of groups.
//!
//! For a finite subset `A` of a group, the right quotient set is
//! `AA^-1 = {a_i a_j^-1}` and the left one is `A^-1A = {a_i^-1 a_j}`. In
//! abelian groups the two coincide; in nonabelian groups their cardinalities
//! can differ, and this crate computes the difference, the difference graphs
//! that explain it, explicit subset families realizing prescribed
//! differences, exhaustive searches over small finite groups, and the
//! distribution of the difference over random subsets of balls in the free
//! group of rank 2.
//!
//! The heavy loops (subset searches, exact power-set enumeration, Monte
//! Carlo sampling) run on rayon when the default `parallel` feature is on
//! and fall back to sequential scans without it. All results are identical
//! in both modes and for any thread count.

pub mod catalog;
mod combi;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod group;
pub mod quotient;
pub mod search;
pub mod stats;
pub mod subset;

pub use error::{Error, Result};
pub use group::{GroupContext, GroupElement};
pub use quotient::{gap_report, GapReport, Side};
pub use subset::SubsetOfGroup;

/// Caps the global worker pool. Returns false when built without the
/// `parallel` feature (the cap is then meaningless and ignored).
pub fn set_thread_cap(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        // Ignore the error from configuring twice; the first cap wins.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
        true
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}
