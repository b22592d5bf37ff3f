//! Dempster's rule of combination.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::Subset;
use crate::mass::MassFunction;
use crate::scalar::Scalar;

/// Conflict coefficient `K = Σ_{B ∩ C = ∅} m1(B) m2(C)`.
pub fn conflict<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    m1.check_frame(m2)?;
    let mut k = T::zero();
    for (b, x) in m1.focal() {
        for (c, y) in m2.focal() {
            if !b.intersects(c) {
                k += x * y;
            }
        }
    }
    Ok(k)
}

/// `m1 ⊕ m2`.
///
/// The conjunctive products are renormalized by their own total rather than
/// by `1 - K`. Both agree in exact arithmetic; the former keeps the result
/// summing to 1 when the rule is applied many times in a row.
pub fn dcr_pair<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<MassFunction<T>> {
    m1.check_frame(m2)?;
    let mut joint: BTreeMap<Subset, T> = BTreeMap::new();
    let mut k = T::zero();
    for (b, x) in m1.focal() {
        for (c, y) in m2.focal() {
            let product = x * y;
            let meet = b.intersection(c);
            if meet.is_empty() {
                k += product;
            } else {
                *joint.entry(meet).or_insert_with(T::zero) += product;
            }
        }
    }
    let agreement: T = joint.values().copied().sum();
    if k >= T::one() - T::conflict_tolerance() || agreement <= T::zero() {
        return Err(Error::TotalConflict(k.as_f64()));
    }
    Ok(MassFunction::from_parts(
        Arc::clone(m1.frame()),
        joint.into_iter().map(|(s, m)| (s, m / agreement)),
    ))
}

/// `m1 ⊕ m2 ⊕ ... ⊕ mN`, folded left to right.
pub fn dcr_n<T: Scalar>(evidence: &[MassFunction<T>]) -> Result<MassFunction<T>> {
    let (first, rest) = evidence.split_first().ok_or(Error::NotEnoughEvidence(1))?;
    rest.iter()
        .try_fold(first.clone(), |acc, m| dcr_pair(&acc, m))
}

/// Combines `times` copies of `m`, i.e. `times - 1` applications of the rule.
pub fn self_fuse<T: Scalar>(m: &MassFunction<T>, times: usize) -> Result<MassFunction<T>> {
    if times == 0 {
        return Err(Error::InvalidConfig(
            "self-fusion count must be at least 1".into(),
        ));
    }
    let mut acc = m.clone();
    for _ in 1..times {
        acc = dcr_pair(&acc, m)?;
    }
    Ok(acc)
}
