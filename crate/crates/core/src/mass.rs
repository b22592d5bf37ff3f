//! Mass functions (basic belief assignments) and their set functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{same_frame, FrameOfDiscernment, Subset};
use crate::scalar::Scalar;

/// A basic belief assignment over a frame.
///
/// Focal elements are kept in ascending bitmask order, so every sum over them
/// is evaluated in the same order regardless of how the function was built.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction<T: Scalar = f64> {
    frame: Arc<FrameOfDiscernment>,
    masses: BTreeMap<Subset, T>,
}

/// Checks raw `(subset, mass)` entries against the mass function invariants.
///
/// Reports the first violation in this order: ∅ focal, subset outside the
/// frame, negative mass, total not equal to 1.
pub fn validate<T: Scalar>(frame: &FrameOfDiscernment, entries: &[(Subset, T)]) -> Result<()> {
    for &(subset, mass) in entries {
        if subset.is_empty() && mass != T::zero() {
            return Err(Error::EmptySetFocal);
        }
        if !frame.contains(subset) {
            return Err(Error::SubsetOutsideFrame(subset.bits()));
        }
        if mass.is_nan() || mass < T::zero() {
            return Err(Error::NegativeMass {
                subset: subset.bits(),
                mass: mass.as_f64(),
            });
        }
    }
    let total: T = entries.iter().map(|&(_, m)| m).sum();
    if !((total - T::one()).abs() <= T::normalization_tolerance()) {
        return Err(Error::NotNormalized(total.as_f64()));
    }
    Ok(())
}

impl<T: Scalar> MassFunction<T> {
    /// Validates and stores the entries; repeated subsets are summed and
    /// zero masses dropped.
    pub fn new<I>(frame: Arc<FrameOfDiscernment>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, T)>,
    {
        let entries: Vec<(Subset, T)> = entries.into_iter().collect();
        validate(&frame, &entries)?;
        Ok(Self::from_parts(frame, entries))
    }

    /// Builds from `("A1,A2", mass)` pairs.
    pub fn from_labels<'a, I>(frame: Arc<FrameOfDiscernment>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, T)>,
    {
        let parsed = entries
            .into_iter()
            .map(|(text, m)| Ok((frame.parse_subset(text)?, m)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(frame, parsed)
    }

    /// Caller guarantees the invariants (used for results of the algebra).
    pub(crate) fn from_parts<I>(frame: Arc<FrameOfDiscernment>, entries: I) -> Self
    where
        I: IntoIterator<Item = (Subset, T)>,
    {
        let mut masses = BTreeMap::new();
        for (subset, mass) in entries {
            if mass > T::zero() {
                *masses.entry(subset).or_insert_with(T::zero) += mass;
            }
        }
        Self { frame, masses }
    }

    /// Vacuous BBA `m(Ω) = 1`, the identity of Dempster's rule.
    pub fn vacuous(frame: Arc<FrameOfDiscernment>) -> Self {
        let full = frame.full();
        Self::from_parts(frame, [(full, T::one())])
    }

    /// Categorical BBA on a single event: the evidence "event `index` is the
    /// ground truth".
    pub fn event_evidence(frame: Arc<FrameOfDiscernment>, index: usize) -> Result<Self> {
        let singleton = frame.singleton(index)?;
        Ok(Self::from_parts(frame, [(singleton, T::one())]))
    }

    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn same_frame(&self, other: &Self) -> bool {
        same_frame(&self.frame, &other.frame)
    }

    pub(crate) fn check_frame(&self, other: &Self) -> Result<()> {
        if self.same_frame(other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// `m(A)`; zero for non-focal subsets.
    pub fn mass(&self, subset: Subset) -> T {
        self.masses.get(&subset).copied().unwrap_or_else(T::zero)
    }

    /// Focal elements with their masses, ascending bitmask order.
    pub fn focal(&self) -> impl Iterator<Item = (Subset, T)> + '_ {
        self.masses.iter().map(|(&s, &m)| (s, m))
    }

    pub fn focal_count(&self) -> usize {
        self.masses.len()
    }

    pub fn total(&self) -> T {
        self.masses.values().copied().sum()
    }

    /// Re-checks the invariants.
    pub fn validate(&self) -> Result<()> {
        let entries: Vec<_> = self.focal().collect();
        validate(&self.frame, &entries)
    }

    /// `Bel(A) = Σ_{B ⊆ A} m(B)`.
    pub fn belief(&self, subset: Subset) -> T {
        self.focal()
            .filter(|&(b, _)| b.is_subset_of(subset))
            .map(|(_, m)| m)
            .sum()
    }

    /// `Pl(A) = Σ_{B ∩ A ≠ ∅} m(B)`.
    pub fn plausibility(&self, subset: Subset) -> T {
        self.focal()
            .filter(|&(b, _)| b.intersects(subset))
            .map(|(_, m)| m)
            .sum()
    }

    /// Pignistic transform: each focal mass is split evenly over its events.
    pub fn pignistic(&self) -> PignisticDistribution<T> {
        let mut probs = vec![T::zero(); self.frame.len()];
        for (subset, mass) in self.focal() {
            let share = mass / T::of(subset.cardinality() as f64);
            for j in subset.members() {
                probs[j] += share;
            }
        }
        PignisticDistribution {
            frame: Arc::clone(&self.frame),
            probs,
        }
    }

    /// Subset holding the largest mass (lowest bitmask on ties).
    pub fn principal_focal(&self) -> Option<Subset> {
        let mut best: Option<(Subset, T)> = None;
        for (s, m) in self.focal() {
            if best.is_none_or(|(_, bm)| m > bm) {
                best = Some((s, m));
            }
        }
        best.map(|(s, _)| s)
    }

    pub fn map_scalar<U: Scalar>(&self) -> MassFunction<U> {
        MassFunction::from_parts(
            Arc::clone(&self.frame),
            self.focal().map(|(s, m)| (s, U::of(m.as_f64()))),
        )
    }
}

/// Probability distribution over the events of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PignisticDistribution<T: Scalar = f64> {
    frame: Arc<FrameOfDiscernment>,
    probs: Vec<T>,
}

impl<T: Scalar> PignisticDistribution<T> {
    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn into_probs(self) -> Vec<T> {
        self.probs
    }

    pub fn prob(&self, index: usize) -> T {
        self.probs[index]
    }

    /// Index of the most probable event; ties go to the lowest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (j, &p) in self.probs.iter().enumerate().skip(1) {
            if p > self.probs[best] {
                best = j;
            }
        }
        best
    }

    pub fn decision_label(&self) -> &str {
        self.frame.label(self.argmax()).unwrap_or_default()
    }
}
