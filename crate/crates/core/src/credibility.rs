//! Difference matrices and evidence credibility.
//!
//! Two families live here. The classical one scores each piece of evidence
//! from its distances to the others (the EDMM). The conditional one scores it
//! against each event of the frame (the EEM): the closer a piece of evidence
//! is to the categorical evidence of an event, the more credible it is given
//! that this event is true.

use std::io::Write;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::divergence::DivergenceMeasure;
use crate::error::{Error, Result};
use crate::frame::FrameOfDiscernment;
use crate::mass::MassFunction;
use crate::scalar::Scalar;

/// Pairwise evidence difference matrix: zero diagonal, symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct Edmm<T: Scalar = f64> {
    values: DMatrix<T>,
    measure: String,
}

/// Event evaluation matrix; `values[(j, i)]` is the difference between
/// evidence `i` and the categorical evidence of event `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eem<T: Scalar = f64> {
    values: DMatrix<T>,
    measure: String,
    frame: Arc<FrameOfDiscernment>,
}

/// `values[(j, i)] = p(c_i | A_j)`; each row sums to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalCredibility<T: Scalar = f64> {
    values: DMatrix<T>,
}

/// Nonnegative weights over the evidence, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct CredibilityVector<T: Scalar = f64>(Vec<T>);

fn require_same_frame<T: Scalar>(ms: &[MassFunction<T>]) -> Result<()> {
    if let Some((first, rest)) = ms.split_first() {
        for m in rest {
            first.check_frame(m)?;
        }
    }
    Ok(())
}

pub fn build_edmm<T: Scalar>(
    evidence: &[MassFunction<T>],
    measure: &dyn DivergenceMeasure<T>,
) -> Result<Edmm<T>> {
    if evidence.len() < 2 {
        return Err(Error::NotEnoughEvidence(2));
    }
    if !measure.is_symmetric() {
        return Err(Error::InvalidConfig(format!(
            "measure `{}` is not symmetric",
            measure.name()
        )));
    }
    require_same_frame(evidence)?;
    Ok(Edmm {
        values: measure.pairwise(evidence)?,
        measure: measure.name().to_string(),
    })
}

pub fn build_eem<T: Scalar>(
    evidence: &[MassFunction<T>],
    frame: &Arc<FrameOfDiscernment>,
    measure: &dyn DivergenceMeasure<T>,
) -> Result<Eem<T>> {
    if evidence.is_empty() {
        return Err(Error::NotEnoughEvidence(1));
    }
    require_same_frame(evidence)?;
    if !crate::frame::same_frame(evidence[0].frame(), frame) {
        return Err(Error::FrameMismatch);
    }
    let events = (0..frame.len())
        .map(|j| MassFunction::event_evidence(Arc::clone(frame), j))
        .collect::<Result<Vec<_>>>()?;
    let by_evidence = measure.cross(evidence, &events)?;
    Ok(Eem {
        values: by_evidence.transpose(),
        measure: measure.name().to_string(),
        frame: Arc::clone(frame),
    })
}

impl<T: Scalar> Edmm<T> {
    /// Wraps an existing matrix, checking the zero-diagonal symmetric shape.
    pub fn from_matrix(values: DMatrix<T>, measure: impl Into<String>) -> Result<Self> {
        if values.nrows() != values.ncols() {
            return Err(Error::LengthMismatch {
                expected: values.nrows(),
                found: values.ncols(),
            });
        }
        for i in 0..values.nrows() {
            if values[(i, i)] != T::zero() {
                return Err(Error::InvalidConfig("EDMM diagonal must be zero".into()));
            }
            for j in 0..i {
                if values[(i, j)] != values[(j, i)] || values[(i, j)] < T::zero() {
                    return Err(Error::InvalidConfig(
                        "EDMM must be symmetric and nonnegative".into(),
                    ));
                }
            }
        }
        Ok(Self {
            values,
            measure: measure.into(),
        })
    }

    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    pub fn measure(&self) -> &str {
        &self.measure
    }

    pub fn len(&self) -> usize {
        self.values.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        let mut vals: Vec<f64> = self.symmetric_eigen().eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        vals.into_iter().map(T::of).collect()
    }

    fn symmetric_eigen(&self) -> SymmetricEigen<f64, nalgebra::Dyn> {
        SymmetricEigen::new(self.values.map(|x| x.as_f64()))
    }

    pub fn write_table<W: Write>(
        &self,
        labels: &[String],
        out: W,
        precision: Option<usize>,
    ) -> Result<()> {
        write_matrix(&self.values, labels, labels, out, precision)
    }
}

impl<T: Scalar> Eem<T> {
    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    pub fn measure(&self) -> &str {
        &self.measure
    }

    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn events(&self) -> usize {
        self.values.nrows()
    }

    pub fn evidence_count(&self) -> usize {
        self.values.ncols()
    }

    pub fn write_table<W: Write>(
        &self,
        evidence: &[String],
        out: W,
        precision: Option<usize>,
    ) -> Result<()> {
        write_matrix(&self.values, self.frame.labels(), evidence, out, precision)
    }
}

fn write_matrix<T: Scalar, W: Write>(
    values: &DMatrix<T>,
    rows: &[String],
    cols: &[String],
    out: W,
    precision: Option<usize>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![String::new()];
    header.extend(cols.iter().cloned());
    w.write_record(&header)?;
    for (r, label) in rows.iter().enumerate() {
        let mut rec = vec![label.clone()];
        for c in 0..values.ncols() {
            rec.push(format_value(values[(r, c)], precision));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn format_value<T: Scalar>(x: T, precision: Option<usize>) -> String {
    match precision {
        Some(p) => format!("{:.*}", p, x.as_f64()),
        None => format!("{}", x.as_f64()),
    }
}

/// `sup_ji = exp(-τ d̃_ji)`.
pub fn support_matrix<T: Scalar>(eem: &Eem<T>, tau: T) -> Result<DMatrix<T>> {
    if !(tau > T::zero()) {
        return Err(Error::NonpositiveTau(tau.as_f64()));
    }
    Ok(eem.values.map(|d| (-tau * d).exp()))
}

/// Row-normalizes a support matrix into `p(c_i | A_j)`.
///
/// A row that underflowed to all zeros is treated as uniform.
pub fn conditional_credibility<T: Scalar>(support: &DMatrix<T>) -> ConditionalCredibility<T> {
    let mut values = support.clone();
    let cols = values.ncols();
    for mut row in values.row_iter_mut() {
        let total: T = row.iter().copied().sum();
        if total > T::zero() {
            row.iter_mut().for_each(|x| *x /= total);
        } else {
            row.fill(T::one() / T::of(cols as f64));
        }
    }
    ConditionalCredibility { values }
}

impl<T: Scalar> ConditionalCredibility<T> {
    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    /// Total-probability expansion `Cred_i = Σ_j p(c_i | A_j) p(A_j)`.
    pub fn credibility(&self, event_probs: &[T]) -> Result<CredibilityVector<T>> {
        if event_probs.len() != self.values.nrows() {
            return Err(Error::LengthMismatch {
                expected: self.values.nrows(),
                found: event_probs.len(),
            });
        }
        let cred = (0..self.values.ncols())
            .map(|i| {
                event_probs
                    .iter()
                    .enumerate()
                    .map(|(j, &p)| self.values[(j, i)] * p)
                    .sum()
            })
            .collect();
        Ok(CredibilityVector(cred))
    }
}

impl<T: Scalar> CredibilityVector<T> {
    /// Checks nonnegativity and normalization.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.iter().any(|w| w.is_nan() || *w < T::zero()) {
            return Err(Error::InvalidConfig(
                "credibility must be nonnegative".into(),
            ));
        }
        let total: T = values.iter().copied().sum();
        if !((total - T::one()).abs() <= T::normalization_tolerance()) {
            return Err(Error::WeightsNotNormalized(total.as_f64()));
        }
        Ok(Self(values))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![T::one() / T::of(n as f64); n])
    }

    /// Scales nonnegative scores to sum to one; all-zero scores give uniform.
    pub fn normalized(scores: Vec<T>) -> Self {
        let total: T = scores.iter().copied().sum();
        if total > T::zero() {
            Self(scores.into_iter().map(|s| s / total).collect())
        } else {
            Self::uniform(scores.len())
        }
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &c) in self.0.iter().enumerate() {
            if c > self.0[best] {
                best = i;
            }
        }
        best
    }
}

/// How row sums of the EDMM turn into credibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AverageSupport {
    /// `Cred_i ∝ Σ_{h≠i} d_ih`, as the formula is usually printed.
    #[default]
    Distance,
    /// `Cred_i ∝ 1 - s_i / Σ_j s_j` with `s_i = Σ_{h≠i} d_ih`; evidence near
    /// the centre of the set gets the most weight.
    Similarity,
}

pub fn average_support_credibility<T: Scalar>(
    edmm: &Edmm<T>,
    variant: AverageSupport,
) -> CredibilityVector<T> {
    let n = edmm.len();
    let sums: Vec<T> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&h| h != i)
                .map(|h| edmm.values[(i, h)])
                .sum()
        })
        .collect();
    let total: T = sums.iter().copied().sum();
    if !(total > T::zero()) {
        return CredibilityVector::uniform(n);
    }
    match variant {
        AverageSupport::Distance => CredibilityVector::normalized(sums),
        AverageSupport::Similarity => {
            CredibilityVector::normalized(sums.into_iter().map(|s| T::one() - s / total).collect())
        }
    }
}

/// Discount factors from the principal eigenvector of the EDMM (entrywise
/// magnitude, scaled to a maximum of 1), normalized to credibility.
///
/// Returns the discount factors alongside the credibility.
pub fn eigenvalue_credibility<T: Scalar>(edmm: &Edmm<T>) -> (Vec<T>, CredibilityVector<T>) {
    let n = edmm.len();
    let eig = edmm.symmetric_eigen();
    let (top, lambda) =
        eig.eigenvalues
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            });
    if !(lambda > 0.0) {
        return (vec![T::one(); n], CredibilityVector::uniform(n));
    }
    let vector: Vec<f64> = eig
        .eigenvectors
        .column(top)
        .iter()
        .map(|x| x.abs())
        .collect();
    let peak = vector.iter().copied().fold(0.0, f64::max);
    let discount: Vec<T> = vector.iter().map(|&x| T::of(x / peak)).collect();
    let cred = CredibilityVector::normalized(discount.clone());
    (discount, cred)
}

/// Initial event probabilities for the iterative fusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialProbability {
    /// Every event equally likely.
    #[default]
    Uniform,
    /// Events closer to the evidence (smaller EEM row sums) are more likely:
    /// `p0_j ∝ 1 / Σ_l d̃_jl`.
    FromEem,
    /// `p0_j ∝ Σ_l d̃_jl`; kept for comparison with the printed formula.
    EemProportional,
}

pub fn initial_prob_uniform<T: Scalar>(frame: &FrameOfDiscernment) -> Vec<T> {
    vec![T::one() / T::of(frame.len() as f64); frame.len()]
}

pub fn initial_prob_from_eem<T: Scalar>(eem: &Eem<T>) -> Vec<T> {
    let sums = row_sums(eem);
    let n = sums.len();
    let zero_rows: Vec<usize> = (0..n).filter(|&j| sums[j] == T::zero()).collect();
    if !zero_rows.is_empty() {
        // every piece of evidence coincides with these events
        let share = T::one() / T::of(zero_rows.len() as f64);
        let mut p = vec![T::zero(); n];
        for j in zero_rows {
            p[j] = share;
        }
        return p;
    }
    let inv: Vec<T> = sums.iter().map(|&s| T::one() / s).collect();
    let total: T = inv.iter().copied().sum();
    inv.into_iter().map(|x| x / total).collect()
}

pub fn initial_prob_eem_proportional<T: Scalar>(eem: &Eem<T>) -> Vec<T> {
    let sums = row_sums(eem);
    let total: T = sums.iter().copied().sum();
    if !(total > T::zero()) {
        return vec![T::one() / T::of(sums.len() as f64); sums.len()];
    }
    sums.into_iter().map(|s| s / total).collect()
}

fn row_sums<T: Scalar>(eem: &Eem<T>) -> Vec<T> {
    eem.values
        .row_iter()
        .map(|r| r.iter().copied().sum())
        .collect()
}

impl InitialProbability {
    pub fn compute<T: Scalar>(self, eem: &Eem<T>) -> Vec<T> {
        match self {
            InitialProbability::Uniform => initial_prob_uniform(eem.frame()),
            InitialProbability::FromEem => initial_prob_from_eem(eem),
            InitialProbability::EemProportional => initial_prob_eem_proportional(eem),
        }
    }
}
