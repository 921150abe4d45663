//! Counterfactual and sub-run trial collections.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::{Outcome, OutcomeSequence};
use crate::settings::{SettingPair, SettingsQuad};

/// All four outcomes of one counterfactual trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CounterfactualTrial {
    pub a: Outcome,
    pub d: Outcome,
    pub b: Outcome,
    pub c: Outcome,
}

impl CounterfactualTrial {
    /// The (arm A, arm B) pair an experiment at `pair` would record.
    pub fn project(&self, pair: SettingPair) -> SubRunTrial {
        let (a, b) = match pair {
            SettingPair::Ab => (self.a, self.b),
            SettingPair::Ac => (self.a, self.c),
            SettingPair::Db => (self.d, self.b),
            SettingPair::Dc => (self.d, self.c),
        };
        SubRunTrial::new(a, b)
    }
}

/// N trials, each carrying the outcome for every setting on both arms.
///
/// Only a hidden-variable model can produce one of these; a feasible
/// experiment records one setting per arm per trial.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterfactualDataset {
    a_seq: OutcomeSequence,
    d_seq: OutcomeSequence,
    b_seq: OutcomeSequence,
    c_seq: OutcomeSequence,
    settings: Option<SettingsQuad>,
}

impl CounterfactualDataset {
    pub fn new(
        a_seq: OutcomeSequence,
        d_seq: OutcomeSequence,
        b_seq: OutcomeSequence,
        c_seq: OutcomeSequence,
        settings: Option<SettingsQuad>,
    ) -> Result<Self> {
        let n = a_seq.len();
        for other in [&d_seq, &b_seq, &c_seq] {
            if other.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: other.len(),
                });
            }
        }
        Ok(CounterfactualDataset {
            a_seq,
            d_seq,
            b_seq,
            c_seq,
            settings,
        })
    }

    pub fn from_trials<I>(trials: I, settings: Option<SettingsQuad>) -> Self
    where
        I: IntoIterator<Item = CounterfactualTrial>,
    {
        let (mut a, mut d, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for t in trials {
            a.push(t.a);
            d.push(t.d);
            b.push(t.b);
            c.push(t.c);
        }
        CounterfactualDataset {
            a_seq: a.into(),
            d_seq: d.into(),
            b_seq: b.into(),
            c_seq: c.into(),
            settings,
        }
    }

    pub fn len(&self) -> usize {
        self.a_seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_seq.is_empty()
    }

    pub fn settings(&self) -> Option<&SettingsQuad> {
        self.settings.as_ref()
    }

    pub fn a_seq(&self) -> &OutcomeSequence {
        &self.a_seq
    }

    pub fn d_seq(&self) -> &OutcomeSequence {
        &self.d_seq
    }

    pub fn b_seq(&self) -> &OutcomeSequence {
        &self.b_seq
    }

    pub fn c_seq(&self) -> &OutcomeSequence {
        &self.c_seq
    }

    pub fn trial(&self, j: usize) -> CounterfactualTrial {
        CounterfactualTrial {
            a: self.a_seq[j],
            d: self.d_seq[j],
            b: self.b_seq[j],
            c: self.c_seq[j],
        }
    }

    pub fn trials(&self) -> impl ExactSizeIterator<Item = CounterfactualTrial> + '_ {
        (0..self.len()).map(|j| self.trial(j))
    }
}

/// One recorded pair. Reordering always moves the pair as a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubRunTrial {
    pub outcome_a: Outcome,
    pub outcome_b: Outcome,
}

impl SubRunTrial {
    pub fn new(outcome_a: Outcome, outcome_b: Outcome) -> Self {
        SubRunTrial {
            outcome_a,
            outcome_b,
        }
    }

    #[inline]
    pub fn product(&self) -> i64 {
        self.outcome_a.value() * self.outcome_b.value()
    }
}

/// Four disjoint experiments, one per setting combination.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SubRunDataset {
    lists: [Vec<SubRunTrial>; 4],
    settings: Option<SettingsQuad>,
}

impl SubRunDataset {
    pub fn new(
        ab: Vec<SubRunTrial>,
        ac: Vec<SubRunTrial>,
        db: Vec<SubRunTrial>,
        dc: Vec<SubRunTrial>,
        settings: Option<SettingsQuad>,
    ) -> Self {
        SubRunDataset {
            lists: [ab, ac, db, dc],
            settings,
        }
    }

    pub fn from_lists(lists: [Vec<SubRunTrial>; 4], settings: Option<SettingsQuad>) -> Self {
        SubRunDataset { lists, settings }
    }

    /// Every sub-run is a projection of the same counterfactual run, in the
    /// same order.
    pub fn shared_copies(data: &CounterfactualDataset) -> Self {
        let lists = SettingPair::ALL.map(|p| data.trials().map(|t| t.project(p)).collect());
        SubRunDataset {
            lists,
            settings: data.settings().copied(),
        }
    }

    pub fn settings(&self) -> Option<&SettingsQuad> {
        self.settings.as_ref()
    }

    pub fn list(&self, pair: SettingPair) -> &[SubRunTrial] {
        &self.lists[pair.index()]
    }

    pub fn list_mut(&mut self, pair: SettingPair) -> &mut Vec<SubRunTrial> {
        &mut self.lists[pair.index()]
    }

    pub fn lists(&self) -> &[Vec<SubRunTrial>; 4] {
        &self.lists
    }

    pub fn into_lists(self) -> [Vec<SubRunTrial>; 4] {
        self.lists
    }

    pub fn ab(&self) -> &[SubRunTrial] {
        self.list(SettingPair::Ab)
    }

    pub fn ac(&self) -> &[SubRunTrial] {
        self.list(SettingPair::Ac)
    }

    pub fn db(&self) -> &[SubRunTrial] {
        self.list(SettingPair::Db)
    }

    pub fn dc(&self) -> &[SubRunTrial] {
        self.list(SettingPair::Dc)
    }

    pub fn lengths(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.lists[i].len())
    }

    pub fn total_len(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }

    pub fn side_a(&self, pair: SettingPair) -> OutcomeSequence {
        self.list(pair).iter().map(|t| t.outcome_a).collect()
    }

    pub fn side_b(&self, pair: SettingPair) -> OutcomeSequence {
        self.list(pair).iter().map(|t| t.outcome_b).collect()
    }

    /// Truncates every list to the shortest one. Lossy.
    pub fn trimmed(&self) -> Self {
        let n = self.lengths().into_iter().min().unwrap_or(0);
        let lists = [0, 1, 2, 3].map(|i| self.lists[i][..n].to_vec());
        SubRunDataset {
            lists,
            settings: self.settings,
        }
    }
}
