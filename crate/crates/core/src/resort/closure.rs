//! Probability that two independent uniform re-sortings coincide.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::resort::TrialPermutation;
use crate::rng::RngSpec;

/// `C(n, k)` as a float, via the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

/// `log10 C(n, k)`, finite for any `k <= n`.
pub fn log10_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (1..=k)
        .map(|i| ((n - k + i) as f64 / i as f64).log10())
        .sum()
}

/// `C(n, k)` exactly, or `None` on overflow.
pub fn binomial_exact(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=u128::from(k) {
        // acc * (n-k+i) is divisible by i at every step.
        acc = acc.checked_mul(u128::from(n - k) + i)? / i;
    }
    Some(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosureMode {
    Exact,
    MonteCarlo { trials: usize, rng: RngSpec },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosureEstimate {
    pub hits: usize,
    pub trials: usize,
    pub probability: f64,
    pub std_error: f64,
}

fn check(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::CountExceedsLength { k, n });
    }
    Ok(())
}

/// Chance that two independent uniform re-sortings of a length-`n` sequence
/// with `k` ones are elementwise identical: `1 / C(n, k)`.
pub fn closure_probability(n: usize, k: usize, mode: ClosureMode) -> Result<f64> {
    check(n, k)?;
    match mode {
        ClosureMode::Exact => Ok(1.0 / binomial(n as u64, k as u64)),
        ClosureMode::MonteCarlo { trials, rng } => {
            closure_frequency(n, k, trials, rng).map(|e| e.probability)
        }
    }
}

/// Monte-Carlo estimate: each trial re-sorts two copies of a `k`-ones
/// sequence with independent uniform permutations and compares them.
pub fn closure_frequency(
    n: usize,
    k: usize,
    trials: usize,
    rng: RngSpec,
) -> Result<ClosureEstimate> {
    check(n, k)?;
    if trials == 0 {
        return Err(Error::TooFewTrials { min: 1, got: 0 });
    }
    let base: Vec<bool> = (0..n).map(|i| i < k).collect();
    let hits = rng
        .generate(trials, |r, _| {
            let first = TrialPermutation::uniform(n, r);
            let second = TrialPermutation::uniform(n, r);
            first
                .as_slice()
                .iter()
                .zip(second.as_slice())
                .all(|(&i, &j)| base[i] == base[j])
        })
        .into_iter()
        .filter(|&hit| hit)
        .count();
    let p = hits as f64 / trials as f64;
    Ok(ClosureEstimate {
        hits,
        trials,
        probability: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
    })
}

/// A uniformly random arrangement of `k` ones among `n` positions.
pub fn random_arrangement<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<bool> {
    let base: Vec<bool> = (0..n).map(|i| i < k).collect();
    TrialPermutation::uniform(n, rng)
        .apply(&base)
        .expect("same length")
}
