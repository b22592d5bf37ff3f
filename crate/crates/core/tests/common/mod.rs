#![allow(dead_code)]

use std::sync::Arc;

use icef::{FrameOfDiscernment, Mass, MassFunction, Subset};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::Rng;

pub fn frame(n: usize) -> Arc<FrameOfDiscernment> {
    Arc::new(FrameOfDiscernment::numbered(n).unwrap())
}

/// Random BBA with 1 to 6 focal elements.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &Arc<FrameOfDiscernment>) -> Mass {
    let subsets = frame.power_set_len() - 1;
    let k = rng.gen_range(1..=subsets.min(6));
    let picks = sample(rng, subsets, k);
    let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let entries = picks
        .iter()
        .zip(&weights)
        .map(|(s, w)| (Subset(s as u32 + 1), w / total));
    MassFunction::new(Arc::clone(frame), entries).unwrap()
}

/// Mass function strategy over a numbered frame of `n` events.
pub fn mass_on(n: usize) -> impl Strategy<Value = Mass> {
    let subsets = (1u32 << n) - 1;
    prop::collection::btree_map(1..=subsets, 0.01f64..1.0, 1..=(subsets as usize).min(6)).prop_map(
        move |w| {
            let total: f64 = w.values().sum();
            MassFunction::new(frame(n), w.into_iter().map(|(s, x)| (Subset(s), x / total))).unwrap()
        },
    )
}

/// `(n, m)` with `n` in `2..=max_n`.
pub fn any_mass(max_n: usize) -> impl Strategy<Value = Mass> {
    (2..=max_n).prop_flat_map(mass_on)
}

/// Several mass functions sharing one frame.
pub fn mass_list(
    max_n: usize,
    count: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<Mass>> {
    (2..=max_n).prop_flat_map(move |n| prop::collection::vec(mass_on(n), count.clone()))
}
