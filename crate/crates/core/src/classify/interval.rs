use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{FrameOfDiscernment, Subset};
use crate::mass::MassFunction;

use super::dataset::Dataset;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn half_width(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    fn extend(&mut self, x: f64) {
        self.lo = self.lo.min(x);
        self.hi = self.hi.max(x);
    }
}

/// `sqrt((mid(a) - mid(b))² + (hw(a) - hw(b))² / 3)`.
pub fn interval_distance(a: &Interval, b: &Interval) -> f64 {
    let dm = a.midpoint() - b.midpoint();
    let dw = a.half_width() - b.half_width();
    (dm * dm + dw * dw / 3.0).sqrt()
}

/// Per-class, per-attribute ranges of the training data.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalModel {
    frame: Arc<FrameOfDiscernment>,
    /// Indexed `[class][attribute]`.
    intervals: Vec<Vec<Interval>>,
    lambda: f64,
}

impl IntervalModel {
    pub fn fit(train: &Dataset, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        let frame = Arc::new(FrameOfDiscernment::new(train.classes().iter().cloned())?);
        let mut intervals: Vec<Option<Vec<Interval>>> = vec![None; train.classes().len()];
        for r in train.records() {
            match &mut intervals[r.class] {
                Some(row) => row
                    .iter_mut()
                    .zip(&r.features)
                    .for_each(|(iv, &x)| iv.extend(x)),
                slot => *slot = Some(r.features.iter().map(|&x| Interval::point(x)).collect()),
            }
        }
        let intervals = intervals
            .into_iter()
            .zip(train.classes())
            .map(|(row, name)| row.ok_or_else(|| Error::MissingClass(name.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            frame,
            intervals,
            lambda,
        })
    }

    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn interval(&self, class: usize, attribute: usize) -> Interval {
        self.intervals[class][attribute]
    }

    pub fn attribute_count(&self) -> usize {
        self.intervals[0].len()
    }

    pub fn class_count(&self) -> usize {
        self.intervals.len()
    }

    /// Similarity `1 / (1 + λ·Dist)` of `x` to each class interval of one attribute.
    pub fn similarities(&self, x: f64, attribute: usize) -> Vec<f64> {
        let p = Interval::point(x);
        self.intervals
            .iter()
            .map(|row| 1.0 / (1.0 + self.lambda * interval_distance(&row[attribute], &p)))
            .collect()
    }

    /// Singleton BBA with `m({c}) = s_c / Σ s`.
    pub fn attribute_evidence(&self, sample: &[f64], attribute: usize) -> Result<MassFunction> {
        if sample.len() != self.attribute_count() {
            return Err(Error::LengthMismatch {
                expected: self.attribute_count(),
                found: sample.len(),
            });
        }
        if attribute >= self.attribute_count() {
            return Err(Error::EventOutOfRange {
                index: attribute,
                n: self.attribute_count(),
            });
        }
        let s = self.similarities(sample[attribute], attribute);
        let total: f64 = s.iter().sum();
        let entries = s
            .iter()
            .enumerate()
            .map(|(c, &v)| (Subset(1 << c), v / total))
            .collect::<Vec<_>>();
        Ok(MassFunction::from_parts(Arc::clone(&self.frame), entries))
    }

    /// One BBA per attribute.
    pub fn evidence(&self, sample: &[f64]) -> Result<Vec<MassFunction>> {
        (0..self.attribute_count())
            .map(|a| self.attribute_evidence(sample, a))
            .collect()
    }
}
