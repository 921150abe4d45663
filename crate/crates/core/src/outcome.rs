//! Detector outcomes and ±1 sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single detector result. No-click events are not represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    #[inline]
    pub fn value(self) -> i64 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    #[inline]
    pub fn is_plus(self) -> bool {
        self == Outcome::Plus
    }

    #[inline]
    pub fn from_sign(positive: bool) -> Self {
        if positive {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }

    #[inline]
    pub fn flipped(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }

    /// The literal written to CSV files.
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Plus => "+1",
            Outcome::Minus => "-1",
        }
    }
}

impl TryFrom<i64> for Outcome {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            other => Err(Error::InvalidOutcome(other)),
        }
    }
}

impl From<Outcome> for i64 {
    fn from(o: Outcome) -> i64 {
        o.value()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered detector outcomes for one arm under one setting.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct OutcomeSequence(Vec<Outcome>);

impl OutcomeSequence {
    pub fn new(values: Vec<Outcome>) -> Self {
        OutcomeSequence(values)
    }

    /// Builds a sequence from integer values, rejecting anything but ±1.
    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Result<Self> {
        values
            .into_iter()
            .map(Outcome::try_from)
            .collect::<Result<Vec<_>>>()
            .map(OutcomeSequence)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Outcome] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Outcome> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Outcome> {
        self.0
    }

    pub fn plus_count(&self) -> usize {
        self.0.iter().filter(|o| o.is_plus()).count()
    }

    pub fn first(&self) -> Option<Outcome> {
        self.0.first().copied()
    }

    /// Indices `i >= 1` where the value differs from its predecessor.
    pub fn switch_pattern(&self) -> Result<Vec<usize>> {
        switch_pattern(self)
    }
}

impl From<Vec<Outcome>> for OutcomeSequence {
    fn from(v: Vec<Outcome>) -> Self {
        OutcomeSequence(v)
    }
}

impl FromIterator<Outcome> for OutcomeSequence {
    fn from_iter<I: IntoIterator<Item = Outcome>>(iter: I) -> Self {
        OutcomeSequence(iter.into_iter().collect())
    }
}

impl std::ops::Index<usize> for OutcomeSequence {
    type Output = Outcome;

    fn index(&self, i: usize) -> &Outcome {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a OutcomeSequence {
    type Item = &'a Outcome;
    type IntoIter = std::slice::Iter<'a, Outcome>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Elementwise identity: same length, same value at every position.
///
/// Equivalent to having the same number of `+1`s, the same first element and
/// the same switch pattern.
pub fn sequences_identical(s: &OutcomeSequence, t: &OutcomeSequence) -> bool {
    s == t
}

pub fn switch_pattern(s: &OutcomeSequence) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(s.0
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != w[1])
        .map(|(i, _)| i + 1)
        .collect())
}

/// Number of positions at which two equal-length sequences differ.
pub fn hamming_distance(s: &OutcomeSequence, t: &OutcomeSequence) -> Result<usize> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: t.len(),
        });
    }
    Ok(s.iter().zip(t.iter()).filter(|(x, y)| x != y).count())
}

/// Sum of elementwise products, kept as an integer.
pub(crate) fn product_sum(s: &[Outcome], t: &[Outcome]) -> i64 {
    s.iter().zip(t).map(|(x, y)| x.value() * y.value()).sum()
}

/// `(1/N) Σ sA(j)·sB(j)`.
pub fn correlation(s_a: &OutcomeSequence, s_b: &OutcomeSequence) -> Result<f64> {
    if s_a.len() != s_b.len() {
        return Err(Error::LengthMismatch {
            left: s_a.len(),
            right: s_b.len(),
        });
    }
    if s_a.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(product_sum(&s_a.0, &s_b.0) as f64 / s_a.len() as f64)
}
