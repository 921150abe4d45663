#![allow(dead_code)]

use bellsort::{Outcome, SubRunDataset, SubRunTrial};

pub fn outcome(bit: u64) -> Outcome {
    Outcome::from_sign(bit & 1 == 1)
}

/// The sub-run dataset encoded by the low `8 * n_per` bits of `code`: two
/// bits per trial, `n_per` trials per list, lists in `ab, ac, db, dc` order.
pub fn subruns_from_code(code: u64, n_per: usize) -> SubRunDataset {
    let mut lists: [Vec<SubRunTrial>; 4] = Default::default();
    let mut bits = code;
    for list in lists.iter_mut() {
        for _ in 0..n_per {
            list.push(SubRunTrial::new(outcome(bits), outcome(bits >> 1)));
            bits >>= 2;
        }
    }
    SubRunDataset::from_lists(lists, None)
}

pub fn sorted_pairs(list: &[SubRunTrial]) -> Vec<SubRunTrial> {
    let mut v = list.to_vec();
    v.sort();
    v
}
