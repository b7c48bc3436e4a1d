//! Distribution of the quotient-set gap over random subsets of balls in F2.
//!
//! Exact mode enumerates the full power set of a ball in Gray-code order,
//! updating product multisets incrementally (toggling one element touches
//! `2|A| +- 1` products per side). Monte Carlo mode draws subsets with a
//! ChaCha8 generator: the base seed keys the generator, the trial index
//! selects its stream, and each trial makes one 64-bit draw per ball element
//! in ball order, so results are reproducible across platforms and thread
//! counts.

use std::collections::{BTreeMap, HashMap};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement, ReducedWord, Syllable};
use crate::subset::SubsetOfGroup;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const MAX_RADIUS: usize = 6;
const DEFAULT_EXACT_BITS: u32 = 20;
const MAX_EXACT_BITS: u32 = 25;

/// All reduced words of length at most `radius` in F2, in length-then-
/// lexicographic order with letters ordered `x < x^-1 < y < y^-1`. Closed
/// under inversion; size `2 * 3^radius - 1`.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    words: Vec<ReducedWord>,
}

pub fn ball(radius: usize) -> Result<Ball> {
    if radius > MAX_RADIUS {
        return Err(Error::InvalidArgument(format!(
            "ball radius {radius} exceeds the cap of {MAX_RADIUS}"
        )));
    }
    let letters = [
        Syllable::new(0, 1),
        Syllable::new(0, -1),
        Syllable::new(1, 1),
        Syllable::new(1, -1),
    ];
    let mut words = vec![ReducedWord::identity(2)];
    let mut frontier = vec![ReducedWord::identity(2)];
    for length in 0..radius {
        let mut next = Vec::with_capacity(frontier.len() * 3 + 1);
        for word in &frontier {
            for letter in letters {
                let extended = word.mul(&ReducedWord::reduce(&[letter], 2).unwrap());
                if extended.length() == length as u64 + 1 {
                    next.push(extended);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    debug_assert_eq!(words.len() as u64, 2 * 3u64.pow(radius as u32) - 1);
    Ok(Ball { radius, words })
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains the identity
    }

    pub fn words(&self) -> &[ReducedWord] {
        &self.words
    }

    pub fn context(&self) -> GroupContext {
        GroupContext::free(2)
    }

    fn subset_from_indices(&self, indices: &[usize]) -> Option<SubsetOfGroup> {
        if indices.is_empty() {
            return None;
        }
        let elements = indices
            .iter()
            .map(|&i| GroupElement::Word(self.words[i].clone()))
            .collect();
        Some(SubsetOfGroup::new(self.context(), elements).expect("distinct ball words"))
    }
}

/// How to explore the distribution.
#[derive(Debug, Clone, Copy)]
pub enum StatsMode {
    /// Enumerate every subset once. Refused above `2^20` subsets unless the
    /// override raises the cap (hard limit `2^25`).
    Exact { bit_limit_override: Option<u32> },
    /// Sample subsets by including each element with probability 1/2.
    MonteCarlo { trials: u64, seed: u64 },
}

/// Moments and histogram of `|AA^-1| - |A^-1A|` over subsets of a ball.
/// In exact mode the mean is exactly 0: inversion pairs each subset with
/// one of opposite gap.
#[derive(Debug, Clone, Serialize)]
pub struct GapStats {
    pub radius: usize,
    pub mode: &'static str,
    pub trials_or_total: u64,
    pub mean: f64,
    pub variance: f64,
    pub histogram: BTreeMap<i64, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Dense product-value ids for all ordered pairs of ball words, per side.
struct ProductTables {
    m: usize,
    right_id: Vec<u32>,
    left_id: Vec<u32>,
    right_values: usize,
    left_values: usize,
}

impl ProductTables {
    fn build(ball: &Ball) -> Self {
        let m = ball.len();
        let words = ball.words();
        let inverses: Vec<ReducedWord> = words.iter().map(|w| w.inverse()).collect();
        let mut right_ids: HashMap<ReducedWord, u32> = HashMap::new();
        let mut left_ids: HashMap<ReducedWord, u32> = HashMap::new();
        let mut right_id = vec![0u32; m * m];
        let mut left_id = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                let r = words[i].mul(&inverses[j]);
                let next = right_ids.len() as u32;
                right_id[i * m + j] = *right_ids.entry(r).or_insert(next);
                let l = inverses[i].mul(&words[j]);
                let next = left_ids.len() as u32;
                left_id[i * m + j] = *left_ids.entry(l).or_insert(next);
            }
        }
        ProductTables {
            m,
            right_values: right_ids.len(),
            left_values: left_ids.len(),
            right_id,
            left_id,
        }
    }
}

/// Running subset state for incremental gap maintenance.
struct SubsetState<'t> {
    tables: &'t ProductTables,
    members: Vec<usize>,
    right_counts: Vec<u32>,
    left_counts: Vec<u32>,
    right_distinct: i64,
    left_distinct: i64,
}

impl<'t> SubsetState<'t> {
    fn empty(tables: &'t ProductTables) -> Self {
        SubsetState {
            tables,
            members: Vec::new(),
            right_counts: vec![0; tables.right_values],
            left_counts: vec![0; tables.left_values],
            right_distinct: 0,
            left_distinct: 0,
        }
    }

    fn gap(&self) -> i64 {
        self.right_distinct - self.left_distinct
    }

    fn bump(counts: &mut [u32], distinct: &mut i64, id: u32) {
        if counts[id as usize] == 0 {
            *distinct += 1;
        }
        counts[id as usize] += 1;
    }

    fn drop(counts: &mut [u32], distinct: &mut i64, id: u32) {
        counts[id as usize] -= 1;
        if counts[id as usize] == 0 {
            *distinct -= 1;
        }
    }

    fn toggle(&mut self, e: usize) {
        let m = self.tables.m;
        if let Some(pos) = self.members.iter().position(|&v| v == e) {
            self.members.swap_remove(pos);
            for &a in &self.members {
                Self::drop(
                    &mut self.right_counts,
                    &mut self.right_distinct,
                    self.tables.right_id[e * m + a],
                );
                Self::drop(
                    &mut self.right_counts,
                    &mut self.right_distinct,
                    self.tables.right_id[a * m + e],
                );
                Self::drop(
                    &mut self.left_counts,
                    &mut self.left_distinct,
                    self.tables.left_id[e * m + a],
                );
                Self::drop(
                    &mut self.left_counts,
                    &mut self.left_distinct,
                    self.tables.left_id[a * m + e],
                );
            }
            Self::drop(
                &mut self.right_counts,
                &mut self.right_distinct,
                self.tables.right_id[e * m + e],
            );
            Self::drop(
                &mut self.left_counts,
                &mut self.left_distinct,
                self.tables.left_id[e * m + e],
            );
        } else {
            for &a in &self.members {
                Self::bump(
                    &mut self.right_counts,
                    &mut self.right_distinct,
                    self.tables.right_id[e * m + a],
                );
                Self::bump(
                    &mut self.right_counts,
                    &mut self.right_distinct,
                    self.tables.right_id[a * m + e],
                );
                Self::bump(
                    &mut self.left_counts,
                    &mut self.left_distinct,
                    self.tables.left_id[e * m + a],
                );
                Self::bump(
                    &mut self.left_counts,
                    &mut self.left_distinct,
                    self.tables.left_id[a * m + e],
                );
            }
            Self::bump(
                &mut self.right_counts,
                &mut self.right_distinct,
                self.tables.right_id[e * m + e],
            );
            Self::bump(
                &mut self.left_counts,
                &mut self.left_distinct,
                self.tables.left_id[e * m + e],
            );
            self.members.push(e);
        }
    }
}

#[derive(Default, Clone)]
struct Accumulator {
    count: u64,
    sum: i64,
    sum_squares: i64,
    histogram: HashMap<i64, u64>,
}

impl Accumulator {
    fn record(&mut self, gap: i64) {
        self.count += 1;
        self.sum += gap;
        self.sum_squares += gap * gap;
        *self.histogram.entry(gap).or_insert(0) += 1;
    }

    fn merge(mut self, other: Accumulator) -> Accumulator {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_squares += other.sum_squares;
        for (gap, count) in other.histogram {
            *self.histogram.entry(gap).or_insert(0) += count;
        }
        self
    }
}

fn gray(t: u64) -> u64 {
    t ^ (t >> 1)
}

/// Walks subsets `start..end` of the Gray-code order and accumulates gaps.
fn walk_chunk(tables: &ProductTables, start: u64, end: u64) -> Accumulator {
    let mut state = SubsetState::empty(tables);
    let initial = gray(start);
    for bit in 0..tables.m {
        if initial >> bit & 1 == 1 {
            state.toggle(bit);
        }
    }
    let mut acc = Accumulator::default();
    acc.record(state.gap());
    for t in start + 1..end {
        state.toggle(t.trailing_zeros() as usize);
        acc.record(state.gap());
    }
    acc
}

/// The gap distribution over subsets of the radius-`radius` ball.
pub fn gap_distribution(radius: usize, mode: StatsMode) -> Result<GapStats> {
    let ball = ball(radius)?;
    match mode {
        StatsMode::Exact { bit_limit_override } => exact_distribution(&ball, bit_limit_override),
        StatsMode::MonteCarlo { trials, seed } => monte_carlo_distribution(&ball, trials, seed),
    }
}

fn exact_distribution(ball: &Ball, bit_limit_override: Option<u32>) -> Result<GapStats> {
    let bits = ball.len() as u32;
    let limit = bit_limit_override
        .unwrap_or(DEFAULT_EXACT_BITS)
        .min(MAX_EXACT_BITS);
    if bits > limit {
        return Err(Error::ExactTooLarge { bits, limit });
    }
    let tables = ProductTables::build(ball);
    let total: u64 = 1 << bits;
    // fixed chunking, independent of worker count
    let chunk = (total >> 8).max(1 << 12).min(total);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();

    let walk = |&start: &u64| walk_chunk(&tables, start, (start + chunk).min(total));
    let acc: Accumulator;
    #[cfg(feature = "parallel")]
    {
        acc = starts
            .par_iter()
            .map(walk)
            .reduce(Accumulator::default, Accumulator::merge);
    }
    #[cfg(not(feature = "parallel"))]
    {
        acc = starts
            .iter()
            .map(walk)
            .fold(Accumulator::default(), Accumulator::merge);
    }

    assert_eq!(acc.count, total);
    assert_eq!(
        acc.sum, 0,
        "inversion pairs every subset with one of opposite gap"
    );
    let variance = acc.sum_squares as f64 / total as f64;
    Ok(GapStats {
        radius: ball.radius(),
        mode: "exact",
        trials_or_total: total,
        mean: 0.0,
        variance,
        histogram: acc.histogram.into_iter().collect(),
        seed: None,
    })
}

/// Inclusion threshold on a raw 64-bit draw for probability `p`: a draw
/// strictly below `p * 2^64` includes the element.
fn inclusion_threshold(p: f64) -> u128 {
    const SCALE: f64 = 18446744073709551616.0; // 2^64
    (p * SCALE).clamp(0.0, SCALE) as u128
}

fn draw_indices(m: usize, threshold: u128, seed: u64, stream: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..m)
        .filter(|_| (rng.next_u64() as u128) < threshold)
        .collect()
}

fn monte_carlo_distribution(ball: &Ball, trials: u64, seed: u64) -> Result<GapStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let tables = ProductTables::build(ball);
    let threshold = inclusion_threshold(0.5);

    let run_trial = |trial: u64, acc: &mut Accumulator, scratch: &mut TrialScratch| {
        let indices = draw_indices(tables.m, threshold, seed, trial);
        let gap = scratch.gap(&tables, &indices);
        assert_eq!(gap % 2, 0, "odd gap over a torsion-free group");
        acc.record(gap);
    };

    let acc: Accumulator;
    #[cfg(feature = "parallel")]
    {
        const TRIALS_PER_TASK: u64 = 256;
        let tasks: Vec<u64> = (0..trials).step_by(TRIALS_PER_TASK as usize).collect();
        acc = tasks
            .par_iter()
            .map(|&first| {
                let mut local = Accumulator::default();
                let mut scratch = TrialScratch::new(&tables);
                for trial in first..(first + TRIALS_PER_TASK).min(trials) {
                    run_trial(trial, &mut local, &mut scratch);
                }
                local
            })
            .reduce(Accumulator::default, Accumulator::merge);
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut local = Accumulator::default();
        let mut scratch = TrialScratch::new(&tables);
        for trial in 0..trials {
            run_trial(trial, &mut local, &mut scratch);
        }
        acc = local;
    }

    let mean = acc.sum as f64 / trials as f64;
    let variance = acc.sum_squares as f64 / trials as f64 - mean * mean;
    Ok(GapStats {
        radius: ball.radius(),
        mode: "montecarlo",
        trials_or_total: trials,
        mean,
        variance,
        histogram: acc.histogram.into_iter().collect(),
        seed: Some(seed),
    })
}

/// Epoch-stamped scratch space: gap evaluation without clearing between
/// trials.
struct TrialScratch {
    epoch: u32,
    right_seen: Vec<u32>,
    left_seen: Vec<u32>,
}

impl TrialScratch {
    fn new(tables: &ProductTables) -> Self {
        TrialScratch {
            epoch: 0,
            right_seen: vec![0; tables.right_values],
            left_seen: vec![0; tables.left_values],
        }
    }

    fn gap(&mut self, tables: &ProductTables, indices: &[usize]) -> i64 {
        self.epoch += 1;
        let mut right = 0i64;
        let mut left = 0i64;
        for &i in indices {
            for &j in indices {
                let r = tables.right_id[i * tables.m + j] as usize;
                if self.right_seen[r] != self.epoch {
                    self.right_seen[r] = self.epoch;
                    right += 1;
                }
                let l = tables.left_id[i * tables.m + j] as usize;
                if self.left_seen[l] != self.epoch {
                    self.left_seen[l] = self.epoch;
                    left += 1;
                }
            }
        }
        right - left
    }
}

/// Draws one subset of the ball, including each element independently with
/// probability `p`. Deterministic in `(ball, p, seed)`; the empty draw comes
/// back as `None` (its gap is 0 by convention).
pub fn sample_subset(ball: &Ball, p: f64, seed: u64) -> Result<Option<SubsetOfGroup>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "inclusion probability {p} outside [0, 1]"
        )));
    }
    let indices = draw_indices(ball.len(), inclusion_threshold(p), seed, 0);
    Ok(ball.subset_from_indices(&indices))
}
