//! Evidence difference measures.
//!
//! [`Pbagd`] compares two mass functions through their exponentially
//! normalized belief/plausibility profiles ([`pb_transform`]) with the
//! arithmetic-geometric divergence, so that overlapping subsets count as
//! partially agreeing. [`Bjs`] is the Jensen-Shannon divergence over focal
//! masses, kept for comparison. Further measures plug in through
//! [`DivergenceMeasure`].

mod curves;
mod pb;

use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::mass::MassFunction;
use crate::scalar::Scalar;

pub use curves::{alpha_curve, default_alphas, moving_set_curve, write_curve, CurvePoint};
pub use pb::{pb_transform, SubsetDistribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Two,
    Natural,
}

impl LogBase {
    fn log<T: Scalar>(self, x: T) -> T {
        match self {
            LogBase::Two => x.log2(),
            LogBase::Natural => x.ln(),
        }
    }
}

/// One term of the arithmetic-geometric divergence; symmetric in `p`, `q`
/// bit for bit.
fn ag_term<T: Scalar>(p: T, q: T, base: LogBase) -> T {
    if p == q {
        return T::zero();
    }
    if p == T::zero() || q == T::zero() {
        return T::infinity();
    }
    let arith = (p + q) * T::of(0.5);
    let geom = (p * q).sqrt();
    // AM >= GM; rounding can flip the comparison for p ≈ q
    if arith <= geom {
        T::zero()
    } else {
        arith * base.log(arith / geom)
    }
}

/// `Σ ((P+Q)/2) log((P+Q) / (2√(PQ)))`.
pub fn ag_divergence<T: Scalar>(p: &[T], q: &[T], base: LogBase) -> Result<T> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(p.iter().zip(q).map(|(&a, &b)| ag_term(a, b, base)).sum())
}

/// Abstract pairwise evidence difference.
pub trait DivergenceMeasure<T: Scalar>: Send + Sync {
    fn name(&self) -> &str;

    fn is_symmetric(&self) -> bool {
        true
    }

    fn evaluate(&self, a: &MassFunction<T>, b: &MassFunction<T>) -> Result<T>;

    /// `out[(i, j)] = evaluate(left[i], right[j])`.
    fn cross(&self, left: &[MassFunction<T>], right: &[MassFunction<T>]) -> Result<DMatrix<T>> {
        let mut out = DMatrix::from_element(left.len(), right.len(), T::zero());
        for (i, a) in left.iter().enumerate() {
            for (j, b) in right.iter().enumerate() {
                out[(i, j)] = self.evaluate(a, b)?;
            }
        }
        Ok(out)
    }

    /// Symmetric matrix of all pairs; only `i < j` is evaluated.
    fn pairwise(&self, evidence: &[MassFunction<T>]) -> Result<DMatrix<T>> {
        let n = evidence.len();
        let mut out = DMatrix::from_element(n, n, T::zero());
        for i in 0..n {
            for j in i + 1..n {
                let d = self.evaluate(&evidence[i], &evidence[j])?;
                out[(i, j)] = d;
                out[(j, i)] = d;
            }
        }
        Ok(out)
    }
}

/// Arithmetic-geometric divergence between PB transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pbagd {
    pub base: LogBase,
    /// Count ∅ as one of the subsets of the PB transform.
    pub include_empty: bool,
}

impl Pbagd {
    fn transform<T: Scalar>(&self, m: &MassFunction<T>) -> SubsetDistribution<T> {
        pb_transform(m, self.include_empty)
    }

    fn between<T: Scalar>(&self, a: &SubsetDistribution<T>, b: &SubsetDistribution<T>) -> T {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(&p, &q)| ag_term(p, q, self.base))
            .sum()
    }
}

/// PBAGD with the default settings (base-2 log, nonempty subsets).
pub fn pbagd<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    Pbagd::default().evaluate(m1, m2)
}

impl<T: Scalar> DivergenceMeasure<T> for Pbagd {
    fn name(&self) -> &str {
        "pbagd"
    }

    fn evaluate(&self, a: &MassFunction<T>, b: &MassFunction<T>) -> Result<T> {
        a.check_frame(b)?;
        Ok(self.between(&self.transform(a), &self.transform(b)))
    }

    fn cross(&self, left: &[MassFunction<T>], right: &[MassFunction<T>]) -> Result<DMatrix<T>> {
        check_frames(left.iter().chain(right))?;
        let lt: Vec<_> = left.iter().map(|m| self.transform(m)).collect();
        let rt: Vec<_> = right.iter().map(|m| self.transform(m)).collect();
        Ok(DMatrix::from_fn(left.len(), right.len(), |i, j| {
            self.between(&lt[i], &rt[j])
        }))
    }

    fn pairwise(&self, evidence: &[MassFunction<T>]) -> Result<DMatrix<T>> {
        check_frames(evidence.iter())?;
        let t: Vec<_> = evidence.iter().map(|m| self.transform(m)).collect();
        let n = t.len();
        let mut out = DMatrix::from_element(n, n, T::zero());
        for i in 0..n {
            for j in i + 1..n {
                let d = self.between(&t[i], &t[j]);
                out[(i, j)] = d;
                out[(j, i)] = d;
            }
        }
        Ok(out)
    }
}

fn check_frames<'a, T: Scalar>(mut ms: impl Iterator<Item = &'a MassFunction<T>>) -> Result<()> {
    if let Some(first) = ms.next() {
        for m in ms {
            first.check_frame(m)?;
        }
    }
    Ok(())
}

/// Jensen-Shannon divergence over the masses of the union of focal elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Bjs {
    pub base: LogBase,
}

pub fn bjs<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    Bjs::default().evaluate(m1, m2)
}

impl<T: Scalar> DivergenceMeasure<T> for Bjs {
    fn name(&self) -> &str {
        "bjs"
    }

    fn evaluate(&self, a: &MassFunction<T>, b: &MassFunction<T>) -> Result<T> {
        a.check_frame(b)?;
        let half = T::of(0.5);
        let support: BTreeSet<_> = a.focal().chain(b.focal()).map(|(s, _)| s).collect();
        let mut total = T::zero();
        for s in support {
            let (p, q) = (a.mass(s), b.mass(s));
            let mid = (p + q) * half;
            if p > T::zero() {
                total += half * p * self.base.log(p / mid);
            }
            if q > T::zero() {
                total += half * q * self.base.log(q / mid);
            }
        }
        Ok(total.max(T::zero()))
    }
}

/// Measures selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Pbagd(Pbagd),
    Bjs(Bjs),
}

impl Default for MeasureKind {
    fn default() -> Self {
        MeasureKind::Pbagd(Pbagd::default())
    }
}

impl MeasureKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "pbagd" => Some(MeasureKind::Pbagd(Pbagd::default())),
            "bjs" => Some(MeasureKind::Bjs(Bjs::default())),
            _ => None,
        }
    }

    pub fn as_measure<T: Scalar>(&self) -> &dyn DivergenceMeasure<T> {
        match self {
            MeasureKind::Pbagd(m) => m,
            MeasureKind::Bjs(m) => m,
        }
    }
}
