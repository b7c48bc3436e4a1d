//! Permutations of `{0, ..., n-1}` with cycle-notation parsing and display.
//!
//! Products compose left to right: `(a * b)` applies `a` first, then `b`.
//! Cycle notation is 1-based, e.g. `(1 5)(2 6)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds from an image array, checking it is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::Malformed {
                    token: format!("{images:?}"),
                    reason: "image array is not a bijection".to_string(),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (pos, &entry) in cycle.iter().enumerate() {
                if entry == 0 || entry > degree {
                    return Err(Error::Malformed {
                        token: entry.to_string(),
                        reason: format!("cycle entry out of range 1..={degree}"),
                    });
                }
                let from = entry - 1;
                if moved[from] {
                    return Err(Error::Malformed {
                        token: entry.to_string(),
                        reason: "cycles are not disjoint".to_string(),
                    });
                }
                moved[from] = true;
                images[from] = cycle[(pos + 1) % cycle.len()] - 1;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self * rhs`: apply `self` first, then `rhs`.
    pub fn mul(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&v| rhs.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Disjoint cycles (1-based), each rotated to start at its least entry,
    /// sorted by first entry; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Parses cycle notation: `(1 5)(2 6)`, or `e` / `()` for the identity.
    pub fn parse(input: &str, degree: usize) -> Result<Self> {
        let trimmed = input.trim();
        if trimmed == "e" || trimmed == "()" {
            return Ok(Permutation::identity(degree));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();
        let flush_number = |number: &mut String, current: &mut Option<Vec<usize>>| -> Result<()> {
            if number.is_empty() {
                return Ok(());
            }
            let value: usize = number.parse().map_err(|_| Error::Malformed {
                token: number.clone(),
                reason: "not a cycle entry".to_string(),
            })?;
            number.clear();
            match current {
                Some(cycle) => cycle.push(value),
                None => {
                    return Err(Error::Malformed {
                        token: value.to_string(),
                        reason: "cycle entry outside parentheses".to_string(),
                    })
                }
            }
            Ok(())
        };
        for ch in trimmed.chars() {
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(Error::Malformed {
                            token: input.to_string(),
                            reason: "nested parenthesis in cycle notation".to_string(),
                        });
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush_number(&mut number, &mut current)?;
                    match current.take() {
                        Some(cycle) if !cycle.is_empty() => cycles.push(cycle),
                        Some(_) => {}
                        None => {
                            return Err(Error::Malformed {
                                token: input.to_string(),
                                reason: "unmatched `)`".to_string(),
                            })
                        }
                    }
                }
                c if c.is_ascii_digit() => number.push(c),
                c if c.is_whitespace() => flush_number(&mut number, &mut current)?,
                other => {
                    return Err(Error::Malformed {
                        token: other.to_string(),
                        reason: "unexpected character in cycle notation".to_string(),
                    })
                }
            }
        }
        if current.is_some() {
            return Err(Error::Malformed {
                token: input.to_string(),
                reason: "unclosed `(`".to_string(),
            });
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, entry) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{entry}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
