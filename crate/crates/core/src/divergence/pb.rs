use std::sync::Arc;

use crate::frame::{FrameOfDiscernment, Subset};
use crate::mass::MassFunction;
use crate::scalar::Scalar;

/// Dense distribution over the subsets of a frame, indexed by bitmask.
///
/// Unless the empty set is included, entry 0 is unused and [`Self::values`]
/// covers the `2^n - 1` nonempty subsets in ascending bitmask order.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetDistribution<T: Scalar = f64> {
    frame: Arc<FrameOfDiscernment>,
    weights: Vec<T>,
    includes_empty: bool,
}

impl<T: Scalar> SubsetDistribution<T> {
    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn includes_empty(&self) -> bool {
        self.includes_empty
    }

    pub fn weight(&self, subset: Subset) -> T {
        self.weights[subset.bits() as usize]
    }

    pub fn values(&self) -> &[T] {
        if self.includes_empty {
            &self.weights
        } else {
            &self.weights[1..]
        }
    }
}

/// `Bel` for every subset of the frame by the subset-sum (zeta) transform.
pub(crate) fn dense_belief<T: Scalar>(m: &MassFunction<T>) -> Vec<T> {
    let n = m.frame().len();
    let size = 1usize << n;
    let mut bel = vec![T::zero(); size];
    for (s, mass) in m.focal() {
        bel[s.bits() as usize] += mass;
    }
    for bit in 0..n {
        let step = 1usize << bit;
        for mask in 0..size {
            if mask & step != 0 {
                let lower = bel[mask ^ step];
                bel[mask] += lower;
            }
        }
    }
    bel
}

/// Exponentially normalized belief/plausibility profile:
/// `PB(A) ∝ e^{Bel(A)} + e^{Pl(A)}` over the nonempty subsets (optionally ∅).
pub fn pb_transform<T: Scalar>(m: &MassFunction<T>, include_empty: bool) -> SubsetDistribution<T> {
    let frame = Arc::clone(m.frame());
    let full = frame.full().bits() as usize;
    let bel = dense_belief(m);
    let total = m.total();
    let mut weights = vec![T::zero(); bel.len()];
    let first = if include_empty { 0 } else { 1 };
    for mask in first..bel.len() {
        // Pl(A) = m(Ω-total) - Bel(complement of A)
        let pl = total - bel[full ^ mask];
        weights[mask] = bel[mask].exp() + pl.exp();
    }
    let norm: T = weights[first..].iter().copied().sum();
    for w in &mut weights[first..] {
        *w /= norm;
    }
    SubsetDistribution {
        frame,
        weights,
        includes_empty: include_empty,
    }
}
