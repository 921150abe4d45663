//! The re-sorting cascade.
//!
//! Four independent sub-runs only factor into `a(b + c) + d(b − c)` when the
//! shared-setting sequences line up trial by trial. The cascade tries to
//! force that by permuting whole trials:
//!
//! 1. re-sort `ac` so its `a` side equals `a₁` (the `ab` list), giving `c̃₂`;
//! 2. re-sort `dc` so its `c` side equals `c̃₂`, giving `d̃₄`;
//! 3. re-sort `db` so its `d` side equals `d̃₄`, giving `b̃₃`.
//!
//! The circuit closes only if `b̃₃` happens to equal `b₁`.

mod closure;
mod permutation;

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::dataset::{SubRunDataset, SubRunTrial};
use crate::error::{Error, Result};
use crate::estimators::gamma_subruns;
use crate::outcome::{hamming_distance, product_sum, Outcome, OutcomeSequence};
use crate::report::{fixed6, fixed6_opt};
use crate::rng::{BlockRng, RngSpec};
use crate::settings::SettingPair;

pub use self::closure::{
    binomial, binomial_exact, closure_frequency, closure_probability, log10_binomial,
    random_arrangement, ClosureEstimate, ClosureMode,
};
pub use self::permutation::TrialPermutation;

/// Which of the many valid re-sortings to pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResortPolicy {
    /// Keep source order within each value class.
    Stable,
    /// Uniform bijection within each value class.
    UniformRandom(RngSpec),
}

impl ResortPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            ResortPolicy::Stable => "stable",
            ResortPolicy::UniformRandom(_) => "uniform-random",
        }
    }

    fn fork(&self, tag: u64) -> Self {
        match self {
            ResortPolicy::Stable => ResortPolicy::Stable,
            ResortPolicy::UniformRandom(rng) => ResortPolicy::UniformRandom(rng.fork(tag)),
        }
    }

    fn rng(&self) -> Option<BlockRng> {
        match self {
            ResortPolicy::Stable => None,
            ResortPolicy::UniformRandom(rng) => Some(rng.block(0)),
        }
    }
}

/// Result of aligning one sequence to another.
///
/// When the `+1` counts differ no exact alignment exists. The permutation is
/// then a best effort: it matches as many positions as the counts allow and
/// fills the remainder from the other value class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub perm: TrialPermutation,
    /// `+1` count of the target minus that of the source.
    pub deficit: i64,
}

impl Alignment {
    pub fn is_exact(&self) -> bool {
        self.deficit == 0
    }
}

fn positions(seq: &[Outcome], value: Outcome) -> Vec<usize> {
    seq.iter()
        .enumerate()
        .filter(|(_, &o)| o == value)
        .map(|(i, _)| i)
        .collect()
}

fn align_slices(target: &[Outcome], source: &[Outcome], mut rng: Option<BlockRng>) -> Alignment {
    let n = target.len();
    let mut mapping = vec![usize::MAX; n];
    let mut spare_targets = Vec::new();
    let mut spare_sources = Vec::new();

    for value in [Outcome::Plus, Outcome::Minus] {
        let tgt = positions(target, value);
        let mut src = positions(source, value);
        if let Some(r) = rng.as_mut() {
            src.shuffle(r);
        }
        let m = tgt.len().min(src.len());
        for (&t, &s) in tgt.iter().zip(&src) {
            mapping[t] = s;
        }
        spare_targets.extend_from_slice(&tgt[m..]);
        spare_sources.extend_from_slice(&src[m..]);
    }
    // At most one class has spare targets and the other the same number of
    // spare sources.
    for (t, s) in spare_targets.into_iter().zip(spare_sources) {
        mapping[t] = s;
    }

    let deficit = target.iter().filter(|o| o.is_plus()).count() as i64
        - source.iter().filter(|o| o.is_plus()).count() as i64;
    Alignment {
        perm: TrialPermutation::from_vec_unchecked(mapping),
        deficit,
    }
}

/// Finds `π` with `source[π[i]] == target[i]` for all `i`.
///
/// Exact exactly when both sequences have the same number of `+1`s; see
/// [`Alignment`] for the mismatched case.
pub fn align_permutation(
    target: &OutcomeSequence,
    source: &OutcomeSequence,
    policy: &ResortPolicy,
) -> Result<Alignment> {
    if target.len() != source.len() {
        return Err(Error::LengthMismatch {
            left: target.len(),
            right: source.len(),
        });
    }
    Ok(align_slices(
        target.as_slice(),
        source.as_slice(),
        policy.rng(),
    ))
}

/// Outcome of the three-step cascade.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResortReport {
    pub n: usize,
    pub policy: &'static str,
    /// Whether steps (ac onto ab, dc onto ac, db onto dc) aligned exactly.
    pub feasible: [bool; 3],
    pub count_deficits: [i64; 3],
    /// All steps exact and `b̃₃ ≡ b₁`.
    pub closure: bool,
    /// Positions where `b₁` and `b̃₃` differ.
    pub hamming_b: usize,
    #[serde(serialize_with = "fixed6")]
    pub gamma_subruns: f64,
    /// The factorized grouping, evaluated only when every step is exact.
    #[serde(serialize_with = "fixed6_opt")]
    pub gamma_resorted: Option<f64>,
    /// Permutations applied to the `ac`, `dc` and `db` lists.
    #[serde(skip)]
    pub perms: [TrialPermutation; 3],
}

impl ResortReport {
    pub fn all_feasible(&self) -> bool {
        self.feasible.iter().all(|&f| f)
    }

    /// Index (0-based) of the first step whose counts did not match.
    pub fn first_infeasible_step(&self) -> Option<usize> {
        self.feasible.iter().position(|&f| !f)
    }
}

fn side_a(list: &[SubRunTrial]) -> Vec<Outcome> {
    list.iter().map(|t| t.outcome_a).collect()
}

fn side_b(list: &[SubRunTrial]) -> Vec<Outcome> {
    list.iter().map(|t| t.outcome_b).collect()
}

struct Resorted {
    a1: Vec<Outcome>,
    b1: Vec<Outcome>,
    c2: Vec<Outcome>,
    d4: Vec<Outcome>,
    b3: Vec<Outcome>,
}

fn apply_perms(data: &SubRunDataset, perms: &[TrialPermutation; 3]) -> Result<Resorted> {
    let ac = perms[0].apply(data.ac())?;
    let dc = perms[1].apply(data.dc())?;
    let db = perms[2].apply(data.db())?;
    Ok(Resorted {
        a1: side_a(data.ab()),
        b1: side_b(data.ab()),
        c2: side_b(&ac),
        d4: side_a(&dc),
        b3: side_b(&db),
    })
}

fn factorized_gamma(r: &Resorted) -> f64 {
    let n = r.a1.len() as i64;
    let first: i64 = product_sum(&r.a1, &r.b1) + product_sum(&r.a1, &r.c2);
    let second: i64 = product_sum(&r.d4, &r.b3) - product_sum(&r.d4, &r.c2);
    first as f64 / n as f64 + second as f64 / n as f64
}

/// Runs the cascade over equal-length sub-runs.
pub fn resort_cascade(data: &SubRunDataset, policy: &ResortPolicy) -> Result<ResortReport> {
    let [ab, ac, db, dc] = data.lengths();
    if !(ab == ac && ac == db && db == dc) {
        return Err(Error::UnequalSubRuns { ab, ac, db, dc });
    }
    let gamma = gamma_subruns(data)?;
    let n = ab;

    // Step 1: ã₂ onto a₁.
    let a1 = side_a(data.ab());
    let step1 = align_slices(&a1, &side_a(data.ac()), policy.fork(1).rng());
    let c2 = side_b(&step1.perm.apply(data.ac())?);

    // Step 2: c̃₄ onto c̃₂.
    let step2 = align_slices(&c2, &side_b(data.dc()), policy.fork(2).rng());
    let d4 = side_a(&step2.perm.apply(data.dc())?);

    // Step 3: d̃₃ onto d̃₄.
    let step3 = align_slices(&d4, &side_a(data.db()), policy.fork(3).rng());
    let b3: OutcomeSequence = side_b(&step3.perm.apply(data.db())?).into();

    let b1: OutcomeSequence = side_b(data.ab()).into();
    let hamming_b = hamming_distance(&b1, &b3)?;
    let feasible = [step1.is_exact(), step2.is_exact(), step3.is_exact()];
    let all_feasible = feasible.iter().all(|&f| f);

    let mut report = ResortReport {
        n,
        policy: policy.name(),
        feasible,
        count_deficits: [step1.deficit, step2.deficit, step3.deficit],
        closure: all_feasible && hamming_b == 0,
        hamming_b,
        gamma_subruns: gamma.value,
        gamma_resorted: None,
        perms: [step1.perm, step2.perm, step3.perm],
    };
    if all_feasible {
        report.gamma_resorted = Some(gamma_resorted(data, &report)?);
    }
    Ok(report)
}

/// `<a₁(b₁ + c̃₂)> + <d̃₄(b̃₃ − c̃₂)>` on the re-sorted lists.
///
/// Only defined for a fully exact cascade; it then equals `gamma_subruns`
/// because each term's sum is invariant under reordering.
pub fn gamma_resorted(data: &SubRunDataset, report: &ResortReport) -> Result<f64> {
    if let Some(step) = report.first_infeasible_step() {
        return Err(Error::InfeasibleCascade { step: step + 1 });
    }
    let lengths = data.lengths();
    if lengths.iter().any(|&l| l != report.n) {
        let [ab, ac, db, dc] = lengths;
        return Err(Error::UnequalSubRuns { ab, ac, db, dc });
    }
    if report.n == 0 {
        return Err(Error::EmptySubRun(SettingPair::Ab));
    }
    let r = apply_perms(data, &report.perms)?;
    Ok(factorized_gamma(&r))
}
