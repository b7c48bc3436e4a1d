//! Reduced words in a free group of finite rank.
//!
//! A word is stored in syllable form: a run of the same generator with a
//! signed exponent, e.g. `x^2 y^-1`. Adjacent syllables always have distinct
//! generators, so equality of words is plain structural equality.

use std::fmt;

use crate::error::{Error, Result};

/// One maximal run `g^k` of a single generator, `k != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Syllable {
            generator,
            exponent,
        }
    }
}

/// A fully reduced word over `rank` free generators. The empty word is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    rank: usize,
    syllables: Vec<Syllable>,
}

impl ReducedWord {
    pub fn identity(rank: usize) -> Self {
        ReducedWord {
            rank,
            syllables: Vec::new(),
        }
    }

    /// A single generator as a word.
    pub fn generator(rank: usize, index: usize) -> Result<Self> {
        if index >= rank {
            return Err(Error::Malformed {
                token: format!("generator {index}"),
                reason: format!("index exceeds rank {rank}"),
            });
        }
        Ok(ReducedWord {
            rank,
            syllables: vec![Syllable::new(index, 1)],
        })
    }

    /// Reduces a raw syllable sequence: merges runs of the same generator and
    /// cancels runs whose exponents sum to zero.
    pub fn reduce(raw: &[Syllable], rank: usize) -> Result<Self> {
        let mut word = ReducedWord::identity(rank);
        for syl in raw {
            if syl.generator >= rank {
                return Err(Error::Malformed {
                    token: format!("generator {}", syl.generator),
                    reason: format!("index exceeds rank {rank}"),
                });
            }
            if syl.exponent != 0 {
                word.push_syllable(*syl);
            }
        }
        Ok(word)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Word length: the sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs())
            .sum()
    }

    /// Appends one syllable, merging and cancelling at the seam.
    fn push_syllable(&mut self, syl: Syllable) {
        debug_assert!(syl.exponent != 0 && syl.generator < self.rank);
        match self.syllables.last_mut() {
            Some(last) if last.generator == syl.generator => {
                let merged = last
                    .exponent
                    .checked_add(syl.exponent)
                    .expect("word exponent overflow");
                if merged == 0 {
                    self.syllables.pop();
                } else {
                    last.exponent = merged;
                }
            }
            _ => self.syllables.push(syl),
        }
    }

    /// Group product; cancellation happens only at the seam.
    pub fn mul(&self, rhs: &ReducedWord) -> ReducedWord {
        assert_eq!(self.rank, rhs.rank, "rank mismatch in free-group product");
        let mut out = self.clone();
        for syl in &rhs.syllables {
            out.push_syllable(*syl);
        }
        out
    }

    /// Inverse: reversed syllables with negated exponents.
    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            rank: self.rank,
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    /// Parses the whitespace-separated token grammar: `e` for the identity,
    /// otherwise tokens `g`, `g^k`, `g^-k` with generator names `x`, `y`, `z`,
    /// `x1`, `y1`, `z1`, `x2`, ... (bare letters alias the first triple).
    pub fn parse(input: &str, rank: usize) -> Result<Self> {
        let mut syllables = Vec::new();
        for token in input.split_whitespace() {
            if token == "e" {
                continue;
            }
            let (name, exponent) = split_token(token)?;
            let generator = generator_index(name, rank, token)?;
            syllables.push(Syllable::new(generator, exponent));
        }
        ReducedWord::reduce(&syllables, rank)
    }
}

/// Splits `name^k` into name and exponent; a bare name means exponent 1.
pub(crate) fn split_token(token: &str) -> Result<(&str, i64)> {
    match token.split_once('^') {
        None => Ok((token, 1)),
        Some((name, exp)) => {
            let exponent: i64 = exp.parse().map_err(|_| Error::Malformed {
                token: token.to_string(),
                reason: format!("`{exp}` is not an integer exponent"),
            })?;
            if exponent == 0 {
                return Err(Error::Malformed {
                    token: token.to_string(),
                    reason: "zero exponent".to_string(),
                });
            }
            Ok((name, exponent))
        }
    }
}

/// Maps a generator name to its 0-based index. Bare `x`, `y`, `z` are
/// aliases for `x1`, `y1`, `z1`; in general `x<k>` is index `3(k-1)`,
/// `y<k>` is `3(k-1)+1`, `z<k>` is `3(k-1)+2`.
fn generator_index(name: &str, rank: usize, token: &str) -> Result<usize> {
    let malformed = |reason: String| Error::Malformed {
        token: token.to_string(),
        reason,
    };
    let mut chars = name.chars();
    let letter = chars
        .next()
        .ok_or_else(|| malformed("empty generator name".into()))?;
    let offset = match letter {
        'x' => 0,
        'y' => 1,
        'z' => 2,
        other => return Err(malformed(format!("unknown generator letter `{other}`"))),
    };
    let rest = chars.as_str();
    let index = if rest.is_empty() {
        offset
    } else {
        let k: usize = rest
            .parse()
            .map_err(|_| malformed(format!("`{rest}` is not a generator number")))?;
        if k == 0 {
            return Err(malformed("generator numbers start at 1".into()));
        }
        3 * (k - 1) + offset
    };
    if index >= rank {
        return Err(malformed(format!(
            "generator index {index} exceeds rank {rank}"
        )));
    }
    Ok(index)
}

/// The display name of a generator: bare letters for rank <= 3, numbered
/// triples (`x1`, `y1`, `z1`, `x2`, ...) above.
pub(crate) fn generator_name(index: usize, rank: usize) -> String {
    let letter = ["x", "y", "z"][index % 3];
    if rank <= 3 {
        letter.to_string()
    } else {
        format!("{letter}{}", index / 3 + 1)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let mut first = true;
        for syl in &self.syllables {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = generator_name(syl.generator, self.rank);
            if syl.exponent == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", syl.exponent)?;
            }
        }
        Ok(())
    }
}
