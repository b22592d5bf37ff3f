//! Open-loop credible fusion and its closed-loop iterative counterpart.
//!
//! Open loop: credibility is computed once, evidence is averaged with it and
//! the average is combined with itself `N - 1` times. The iterative scheme
//! feeds the pignistic probabilities of each fused result back into
//! event-conditional credibility until the probabilities stop moving.

use std::io::Write;
use std::sync::Arc;

use crate::combine::{dcr_n, self_fuse};
use crate::credibility::{
    average_support_credibility, build_edmm, build_eem, conditional_credibility,
    eigenvalue_credibility, format_value, support_matrix, AverageSupport, ConditionalCredibility,
    CredibilityVector, Eem, InitialProbability,
};
use crate::divergence::MeasureKind;
use crate::error::{Error, Result};
use crate::frame::FrameOfDiscernment;
use crate::mass::{MassFunction, PignisticDistribution};
use crate::scalar::Scalar;

/// Fused mass function with its pignistic decision.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionResult<T: Scalar = f64> {
    pub fused: MassFunction<T>,
    pub pignistic: PignisticDistribution<T>,
    pub decision: usize,
    pub method: String,
    pub credibility: Option<CredibilityVector<T>>,
}

impl<T: Scalar> FusionResult<T> {
    fn new(
        fused: MassFunction<T>,
        method: &str,
        credibility: Option<CredibilityVector<T>>,
    ) -> Self {
        let pignistic = fused.pignistic();
        let decision = pignistic.argmax();
        Self {
            fused,
            pignistic,
            decision,
            method: method.to_string(),
            credibility,
        }
    }

    pub fn decision_label(&self) -> &str {
        self.fused.frame().label(self.decision).unwrap_or_default()
    }
}

/// Maximum pignistic probability rule; ties resolve to the lowest event index.
pub fn decide<T: Scalar>(fused: &MassFunction<T>) -> usize {
    fused.pignistic().argmax()
}

/// `m_avg(A) = Σ_i w_i m_i(A)`.
pub fn weighted_average<T: Scalar>(
    evidence: &[MassFunction<T>],
    weights: &CredibilityVector<T>,
) -> Result<MassFunction<T>> {
    if evidence.len() != weights.len() {
        return Err(Error::LengthMismatch {
            expected: evidence.len(),
            found: weights.len(),
        });
    }
    let first = evidence.first().ok_or(Error::NotEnoughEvidence(1))?;
    for m in &evidence[1..] {
        first.check_frame(m)?;
    }
    let total: T = weights.values().iter().copied().sum();
    let entries = evidence
        .iter()
        .zip(weights.values())
        .flat_map(|(m, &w)| m.focal().map(move |(s, x)| (s, w * x / total)))
        .collect::<Vec<_>>();
    Ok(MassFunction::from_parts(Arc::clone(first.frame()), entries))
}

/// Credibility-weighted average combined with itself once per piece of
/// evidence (`N - 1` rule applications).
pub fn cef_fuse<T: Scalar>(
    evidence: &[MassFunction<T>],
    weights: &CredibilityVector<T>,
) -> Result<FusionResult<T>> {
    let fused = cef_mass(evidence, weights)?;
    Ok(FusionResult::new(fused, "cef", Some(weights.clone())))
}

fn cef_mass<T: Scalar>(
    evidence: &[MassFunction<T>],
    weights: &CredibilityVector<T>,
) -> Result<MassFunction<T>> {
    let avg = weighted_average(evidence, weights)?;
    self_fuse(&avg, evidence.len())
}

/// Murphy's rule: plain average, then self-combination.
pub fn murphy_fuse<T: Scalar>(evidence: &[MassFunction<T>]) -> Result<FusionResult<T>> {
    let weights = CredibilityVector::uniform(evidence.len());
    let fused = cef_mass(evidence, &weights)?;
    Ok(FusionResult::new(fused, "murphy", Some(weights)))
}

/// Plain Dempster combination of all evidence.
pub fn dcr_fuse<T: Scalar>(evidence: &[MassFunction<T>]) -> Result<FusionResult<T>> {
    Ok(FusionResult::new(dcr_n(evidence)?, "dcr", None))
}

/// Open-loop fusion weighted by EDMM average-support credibility.
pub fn cef_average_fuse<T: Scalar>(
    evidence: &[MassFunction<T>],
    measure: MeasureKind,
    variant: AverageSupport,
) -> Result<FusionResult<T>> {
    let edmm = build_edmm(evidence, measure.as_measure())?;
    let cred = average_support_credibility(&edmm, variant);
    let fused = cef_mass(evidence, &cred)?;
    Ok(FusionResult::new(fused, "cef-avg", Some(cred)))
}

/// Open-loop fusion weighted by EDMM eigenvector credibility.
pub fn cef_eigen_fuse<T: Scalar>(
    evidence: &[MassFunction<T>],
    measure: MeasureKind,
) -> Result<FusionResult<T>> {
    let edmm = build_edmm(evidence, measure.as_measure())?;
    let (_, cred) = eigenvalue_credibility(&edmm);
    let fused = cef_mass(evidence, &cred)?;
    Ok(FusionResult::new(fused, "cef-eig", Some(cred)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMode {
    #[default]
    Full,
    /// Keep only the last two steps.
    Light,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IcefConfig<T: Scalar = f64> {
    /// Distance coefficient of the support kernel.
    pub tau: T,
    /// Stop once the L1 change of the event probabilities is at most this.
    pub delta: T,
    pub max_iter: usize,
    pub init: InitialProbability,
    pub measure: MeasureKind,
    pub trace: TraceMode,
}

impl<T: Scalar> Default for IcefConfig<T> {
    fn default() -> Self {
        Self {
            tau: T::of(200.0),
            delta: T::of(1e-6),
            max_iter: 200,
            init: InitialProbability::Uniform,
            measure: MeasureKind::default(),
            trace: TraceMode::Full,
        }
    }
}

impl<T: Scalar> IcefConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > T::zero()) {
            return Err(Error::NonpositiveTau(self.tau.as_f64()));
        }
        if !(self.delta > T::zero()) {
            return Err(Error::InvalidConfig("delta must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// One pass of the loop. `probabilities` are the event probabilities the
/// credibility was computed from; `next` the pignistic probabilities of the
/// fused result.
#[derive(Debug, Clone, PartialEq)]
pub struct IcefStep<T: Scalar = f64> {
    pub step: usize,
    pub probabilities: Vec<T>,
    pub credibility: CredibilityVector<T>,
    pub fused: MassFunction<T>,
    pub next: Vec<T>,
    pub delta: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IcefTrace<T: Scalar = f64> {
    pub steps: Vec<IcefStep<T>>,
    pub converged: bool,
    pub steps_used: usize,
}

impl<T: Scalar> IcefTrace<T> {
    pub fn last(&self) -> &IcefStep<T> {
        self.steps.last().expect("trace holds at least one step")
    }

    /// Writes `step, p(A1..An), Cred1..CredN, delta` rows.
    pub fn write_table<W: Write>(
        &self,
        frame: &FrameOfDiscernment,
        evidence_names: &[String],
        out: W,
        precision: Option<usize>,
    ) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["step".to_string()];
        header.extend(frame.labels().iter().map(|l| format!("p({l})")));
        header.extend(evidence_names.iter().map(|n| format!("cred({n})")));
        header.push("delta".into());
        w.write_record(&header)?;
        for s in &self.steps {
            let mut rec = vec![s.step.to_string()];
            rec.extend(s.probabilities.iter().map(|&p| format_value(p, precision)));
            rec.extend(
                s.credibility
                    .values()
                    .iter()
                    .map(|&c| format_value(c, precision)),
            );
            rec.push(format!("{:e}", s.delta.as_f64()));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct IcefRun<T: Scalar = f64> {
    pub result: FusionResult<T>,
    pub trace: IcefTrace<T>,
    pub eem: Eem<T>,
    pub conditional: ConditionalCredibility<T>,
}

impl<T: Scalar> IcefRun<T> {
    pub fn require_converged(self) -> Result<Self> {
        if self.trace.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                steps: self.trace.steps_used,
                delta: self.trace.last().delta.as_f64(),
            })
        }
    }
}

/// Iterative credible evidence fusion.
///
/// The EEM, support matrix and conditional credibility are computed once;
/// only the event probabilities change between passes. A run that hits
/// `max_iter` is returned with `trace.converged == false`.
pub fn icef<T: Scalar>(
    evidence: &[MassFunction<T>],
    frame: &Arc<FrameOfDiscernment>,
    cfg: &IcefConfig<T>,
) -> Result<IcefRun<T>> {
    cfg.validate()?;
    let eem = build_eem(evidence, frame, cfg.measure.as_measure())?;
    let conditional = conditional_credibility(&support_matrix(&eem, cfg.tau)?);
    let mut probs = cfg.init.compute(&eem);

    let mut steps: Vec<IcefStep<T>> = Vec::new();
    let mut converged = false;
    let mut used = 0;
    for k in 1..=cfg.max_iter {
        let credibility = conditional.credibility(&probs)?;
        let fused = cef_mass(evidence, &credibility)?;
        let next = fused.pignistic().into_probs();
        let delta: T = next.iter().zip(&probs).map(|(&a, &b)| (a - b).abs()).sum();
        used = k;
        steps.push(IcefStep {
            step: k,
            probabilities: std::mem::replace(&mut probs, next.clone()),
            credibility,
            fused,
            next,
            delta,
        });
        if cfg.trace == TraceMode::Light && steps.len() > 2 {
            steps.remove(0);
        }
        if delta <= cfg.delta {
            converged = true;
            break;
        }
    }

    let last = steps.last().expect("max_iter >= 1");
    let result = FusionResult::new(last.fused.clone(), "icef", Some(last.credibility.clone()));
    Ok(IcefRun {
        result,
        trace: IcefTrace {
            steps,
            converged,
            steps_used: used,
        },
        eem,
        conditional,
    })
}

/// Largest change in the event probabilities when the update is applied once
/// more to `probs`.
pub fn fixed_point_residual<T: Scalar>(
    evidence: &[MassFunction<T>],
    conditional: &ConditionalCredibility<T>,
    probs: &[T],
) -> Result<T> {
    let cred = conditional.credibility(probs)?;
    let next = cef_mass(evidence, &cred)?.pignistic().into_probs();
    Ok(next
        .iter()
        .zip(probs)
        .map(|(&a, &b)| (a - b).abs())
        .fold(T::zero(), T::max))
}

/// Fusion strategies selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FusionMethod {
    Dcr,
    Murphy,
    Icef,
    CefAverage,
    CefEigen,
}

impl FusionMethod {
    pub const ALL: [FusionMethod; 5] = [
        FusionMethod::Dcr,
        FusionMethod::Murphy,
        FusionMethod::Icef,
        FusionMethod::CefAverage,
        FusionMethod::CefEigen,
    ];

    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "dcr" | "dempster" => Some(Self::Dcr),
            "murphy" => Some(Self::Murphy),
            "icef" | "icef-pbagd" => Some(Self::Icef),
            "cef-avg" => Some(Self::CefAverage),
            "cef-eig" => Some(Self::CefEigen),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Dcr => "dcr",
            Self::Murphy => "murphy",
            Self::Icef => "icef-pbagd",
            Self::CefAverage => "cef-avg",
            Self::CefEigen => "cef-eig",
        }
    }

    /// Runs the method; non-converged ICEF runs still yield their last result.
    pub fn fuse<T: Scalar>(
        self,
        evidence: &[MassFunction<T>],
        frame: &Arc<FrameOfDiscernment>,
        cfg: &IcefConfig<T>,
    ) -> Result<FusionResult<T>> {
        let mut result = match self {
            Self::Dcr => dcr_fuse(evidence)?,
            Self::Murphy => murphy_fuse(evidence)?,
            Self::Icef => icef(evidence, frame, cfg)?.result,
            Self::CefAverage => cef_average_fuse(evidence, cfg.measure, AverageSupport::Distance)?,
            Self::CefEigen => cef_eigen_fuse(evidence, cfg.measure)?,
        };
        result.method = self.name().to_string();
        Ok(result)
    }
}
