//! Γ estimators: the pooled counterfactual sum, the four-sub-run sum, the
//! per-trial factorized check, and the random splitter between them.

use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::{CounterfactualDataset, SubRunDataset, SubRunTrial};
use crate::error::{Error, Result};
use crate::report::{fixed6, fixed6_array};
use crate::rng::RngSpec;
use crate::settings::{SettingPair, SettingsQuad};
use crate::sources::CorrelationLaw;

/// Γ and its four correlation terms, ordered `ab, ac, db, dc`.
///
/// `per_term` holds the unsigned correlations; `value` is
/// `ab + ac + db − dc`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaResult {
    #[serde(serialize_with = "fixed6")]
    pub value: f64,
    #[serde(serialize_with = "fixed6_array")]
    pub per_term: [f64; 4],
    pub n_used: [usize; 4],
}

impl GammaResult {
    pub fn term(&self, pair: SettingPair) -> f64 {
        self.per_term[pair.index()]
    }

    pub fn satisfies_bound(&self) -> bool {
        self.value.abs() <= crate::CHSH_BOUND
    }
}

/// Per-trial values of `a(b + c) + d(b − c)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub per_trial_values: Vec<i64>,
    pub max_abs: i64,
    #[serde(serialize_with = "fixed6")]
    pub gamma: f64,
}

impl BoundReport {
    pub fn all_values_are_two(&self) -> bool {
        self.per_trial_values.iter().all(|v| v.abs() == 2)
    }
}

fn product_sum(list: &[SubRunTrial]) -> i64 {
    list.par_iter().map(SubRunTrial::product).sum()
}

/// `(1/N) Σ_j [a b + a c + d b − d c]` over one counterfactual run.
pub fn gamma_pooled(data: &CounterfactualDataset) -> Result<GammaResult> {
    let n = data.len();
    if n == 0 {
        return Err(Error::NoTrials);
    }
    let mut sums = [0i64; 4];
    for t in data.trials() {
        for pair in SettingPair::ALL {
            sums[pair.index()] += t.project(pair).product();
        }
    }
    let total: i64 = SettingPair::ALL
        .iter()
        .map(|p| p.sign() * sums[p.index()])
        .sum();
    Ok(GammaResult {
        value: total as f64 / n as f64,
        per_term: sums.map(|s| s as f64 / n as f64),
        n_used: [n; 4],
    })
}

/// `Σ_xy ± (1/N_xy) Σ_{j ∈ X_xy} x(j) y(j)`, each term normalized by its own
/// sub-run length. Carries no Bell bound: the range is `[−4, 4]`.
pub fn gamma_subruns(data: &SubRunDataset) -> Result<GammaResult> {
    let mut per_term = [0.0; 4];
    let mut n_used = [0usize; 4];
    for pair in SettingPair::ALL {
        let list = data.list(pair);
        if list.is_empty() {
            return Err(Error::EmptySubRun(pair));
        }
        per_term[pair.index()] = product_sum(list) as f64 / list.len() as f64;
        n_used[pair.index()] = list.len();
    }
    let value = SettingPair::ALL
        .iter()
        .map(|p| p.sign() as f64 * per_term[p.index()])
        .sum();
    Ok(GammaResult {
        value,
        per_term,
        n_used,
    })
}

/// Evaluates `a(b + c) + d(b − c)` for every trial. Each value is ±2 because
/// exactly one of `b + c`, `b − c` vanishes.
pub fn termwise_bound_check(data: &CounterfactualDataset) -> Result<BoundReport> {
    let n = data.len();
    if n == 0 {
        return Err(Error::NoTrials);
    }
    let per_trial_values: Vec<i64> = data
        .trials()
        .map(|t| {
            let (a, d, b, c) = (t.a.value(), t.d.value(), t.b.value(), t.c.value());
            a * (b + c) + d * (b - c)
        })
        .collect();
    let max_abs = per_trial_values.iter().map(|v| v.abs()).max().unwrap_or(0);
    let gamma = per_trial_values.iter().sum::<i64>() as f64 / n as f64;
    Ok(BoundReport {
        per_trial_values,
        max_abs,
        gamma,
    })
}

/// Sub-runs plus the source trial index of every kept pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub dataset: SubRunDataset,
    pub sources: [Vec<usize>; 4],
}

/// Sends each trial to one of the four sub-runs with probability ¼, keeping
/// only the two outcomes that experiment would record.
pub fn split_random(data: &CounterfactualDataset, rng: RngSpec) -> Result<SubRunDataset> {
    split_with_sources(data, rng).map(|s| s.dataset)
}

/// [`split_random`], also returning the source indices for oracle checks.
pub fn split_with_sources(data: &CounterfactualDataset, rng: RngSpec) -> Result<Split> {
    let n = data.len();
    if n < 4 {
        return Err(Error::TooFewTrials { min: 4, got: n });
    }
    let assignment = rng.generate(n, |r, _| SettingPair::ALL[(r.next_u64() >> 62) as usize]);
    split_by_assignment(data, &assignment)
}

/// Splits by an explicit per-trial assignment.
pub fn split_by_assignment(
    data: &CounterfactualDataset,
    assignment: &[SettingPair],
) -> Result<Split> {
    if assignment.len() != data.len() {
        return Err(Error::LengthMismatch {
            left: data.len(),
            right: assignment.len(),
        });
    }
    let mut lists: [Vec<SubRunTrial>; 4] = Default::default();
    let mut sources: [Vec<usize>; 4] = Default::default();
    for (j, (t, &pair)) in data.trials().zip(assignment).enumerate() {
        lists[pair.index()].push(t.project(pair));
        sources[pair.index()].push(j);
    }
    Ok(Split {
        dataset: SubRunDataset::from_lists(lists, data.settings().copied()),
        sources,
    })
}

/// `E(a,b) + E(a,c) + E(d,b) − E(d,c)` under `law`.
pub fn theory_gamma(settings: &SettingsQuad, law: CorrelationLaw) -> f64 {
    theory_gamma_radians(
        [settings.a, settings.d, settings.b, settings.c].map(|x| x.radians()),
        law,
    )
}

/// [`theory_gamma`] for raw angles `[a, d, b, c]`, which may coincide.
pub fn theory_gamma_radians(angles: [f64; 4], law: CorrelationLaw) -> f64 {
    let [a, d, b, c] = angles;
    let e = |x, y| law.correlation_radians(x, y);
    e(a, b) + e(a, c) + e(d, b) - e(d, c)
}
