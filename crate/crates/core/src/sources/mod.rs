//! Trial generators (hidden-variable and quantum statistics) and CSV I/O.

mod csv;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::dataset::{CounterfactualDataset, CounterfactualTrial, SubRunDataset, SubRunTrial};
use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::rng::{unit_f64, RngSpec};
use crate::settings::{Angle, SettingPair, SettingsQuad};

pub use self::csv::{
    ingest_counterfactual_csv, ingest_csv, read_trial_file, write_counterfactual_csv,
    write_subrun_csv, TrialFile,
};

/// A deterministic local response `A(θ, λ)`.
///
/// Implementations must depend only on the local angle and the shared hidden
/// variable.
pub trait LocalResponse {
    fn response(&self, angle: Angle, lambda: f64) -> Outcome;
}

/// Built-in hidden-variable models. `λ` is uniform on `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LhvModel {
    /// `+1` iff `cos 2(θ − λ) ≥ 0`.
    #[default]
    SignMalus,
}

impl LhvModel {
    /// Exact pair correlation of the model for two analyzer angles.
    ///
    /// For sign-malus both arms are square waves in `λ`, so the correlation is
    /// the triangle `1 − 4Δ/π` in the folded angle distance `Δ ∈ [0, π/2]`.
    pub fn correlation(&self, alpha: Angle, beta: Angle) -> f64 {
        match self {
            LhvModel::SignMalus => 1.0 - 4.0 * alpha.folded_distance(beta) / PI,
        }
    }
}

impl LocalResponse for LhvModel {
    fn response(&self, angle: Angle, lambda: f64) -> Outcome {
        match self {
            LhvModel::SignMalus => {
                Outcome::from_sign((2.0 * (angle.radians() - lambda)).cos() >= 0.0)
            }
        }
    }
}

impl FromStr for LhvModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sign-malus" => Ok(LhvModel::SignMalus),
            _ => Err(format!("unknown model {s:?}")),
        }
    }
}

/// Pair-correlation law `E(α, β)` for the quantum sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrelationLaw {
    /// `E = cos 2(α − β)`: polarization-entangled photons.
    #[default]
    PhotonMalus,
    /// `E = −cos(α − β)`: spin-½ singlet.
    SpinHalf,
}

impl CorrelationLaw {
    pub fn correlation(&self, alpha: Angle, beta: Angle) -> f64 {
        self.correlation_radians(alpha.radians(), beta.radians())
    }

    pub fn correlation_radians(&self, alpha: f64, beta: f64) -> f64 {
        match self {
            CorrelationLaw::PhotonMalus => (2.0 * (alpha - beta)).cos(),
            CorrelationLaw::SpinHalf => -(alpha - beta).cos(),
        }
    }

    /// `P(s, t) = ¼(1 + s·t·E)`.
    pub fn joint_probability(&self, alpha: Angle, beta: Angle, s: Outcome, t: Outcome) -> f64 {
        0.25 * (1.0 + (s.value() * t.value()) as f64 * self.correlation(alpha, beta))
    }
}

impl fmt::Display for CorrelationLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorrelationLaw::PhotonMalus => "photon-malus",
            CorrelationLaw::SpinHalf => "spin-half",
        })
    }
}

impl FromStr for CorrelationLaw {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "photon-malus" => Ok(CorrelationLaw::PhotonMalus),
            "spin-half" => Ok(CorrelationLaw::SpinHalf),
            _ => Err(format!("unknown correlation law {s:?}")),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::TooFewTrials { min: 1, got: 0 });
    }
    Ok(())
}

/// Draws `n` hidden variables and records every setting's outcome for each.
pub fn lhv_generate<M>(
    model: &M,
    settings: &SettingsQuad,
    n: usize,
    rng: RngSpec,
) -> Result<CounterfactualDataset>
where
    M: LocalResponse + Sync,
{
    check_n(n)?;
    let lambdas = rng.generate(n, |r, _| unit_f64(r) * PI);
    lhv_from_lambdas(model, settings, &lambdas)
}

/// Counterfactual dataset for an explicit list of hidden variables.
pub fn lhv_from_lambdas<M: LocalResponse>(
    model: &M,
    settings: &SettingsQuad,
    lambdas: &[f64],
) -> Result<CounterfactualDataset> {
    check_n(lambdas.len())?;
    let trials = lambdas.iter().map(|&l| CounterfactualTrial {
        a: model.response(settings.a, l),
        d: model.response(settings.d, l),
        b: model.response(settings.b, l),
        c: model.response(settings.c, l),
    });
    Ok(CounterfactualDataset::from_trials(trials, Some(*settings)))
}

/// Independent pairs from `P(s, t) = ¼(1 + s·t·E(α, β))`.
///
/// `s` is a fair coin; `t` copies `s` with probability `(1 + E)/2`. Each trial
/// consumes exactly two 64-bit draws.
pub fn qm_generate(
    alpha: Angle,
    beta: Angle,
    law: CorrelationLaw,
    n: usize,
    rng: RngSpec,
) -> Result<Vec<SubRunTrial>> {
    check_n(n)?;
    let p_same = 0.5 * (1.0 + law.correlation(alpha, beta));
    Ok(rng.generate(n, |r, _| {
        let s = Outcome::from_sign(r.next_u64() >> 63 == 1);
        let t = if unit_f64(r) < p_same { s } else { s.flipped() };
        SubRunTrial::new(s, t)
    }))
}

/// Four independent experiments, one per setting pair, each on its own stream.
pub fn generate_subruns(
    settings: &SettingsQuad,
    law: CorrelationLaw,
    n_per: usize,
    rng: RngSpec,
) -> Result<SubRunDataset> {
    check_n(n_per)?;
    let mut lists: [Vec<SubRunTrial>; 4] = Default::default();
    for pair in SettingPair::ALL {
        let (alpha, beta) = settings.pair(pair);
        lists[pair.index()] = qm_generate(alpha, beta, law, n_per, rng.fork(pair.index() as u64))?;
    }
    Ok(SubRunDataset::from_lists(lists, Some(*settings)))
}
