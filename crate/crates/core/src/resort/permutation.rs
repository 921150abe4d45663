use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A reordering of one sub-run list, in gather form: position `i` of the
/// re-sorted list holds element `mapping[i]` of the original.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrialPermutation {
    mapping: Vec<usize>,
}

impl TrialPermutation {
    pub fn identity(n: usize) -> Self {
        TrialPermutation {
            mapping: (0..n).collect(),
        }
    }

    /// Validates that `mapping` contains every index in `0..len` once.
    pub fn from_vec(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &i in &mapping {
            match seen.get_mut(i) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::InvalidPermutation),
            }
        }
        Ok(TrialPermutation { mapping })
    }

    pub(crate) fn from_vec_unchecked(mapping: Vec<usize>) -> Self {
        debug_assert!(Self::from_vec(mapping.clone()).is_ok());
        TrialPermutation { mapping }
    }

    /// Uniformly random permutation of `n` elements.
    pub fn uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.shuffle(rng);
        TrialPermutation { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// Reorders whole elements; pairs are never split.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.mapping.len() {
            return Err(Error::LengthMismatch {
                left: self.mapping.len(),
                right: items.len(),
            });
        }
        Ok(self.mapping.iter().map(|&i| items[i].clone()).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        TrialPermutation { mapping: inv }
    }
}
