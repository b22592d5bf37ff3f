//! Dempster-Shafer evidence fusion with iterative, event-conditioned
//! credibility.
//!
//! The core types are generic over the floating-point [`Scalar`]; the aliases
//! at the crate root fix it to `f64` (or `f32` with the `32` suffix).
//!
//! ```
//! use icef::{builtin, icef, IcefConfig};
//!
//! let set = builtin::fault_diagnosis::<f64>();
//! let run = icef(&set.evidence, &set.frame, &IcefConfig::default()).unwrap();
//! assert_eq!(run.result.decision_label(), "A1");
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod builtin;
pub mod classify;
pub mod combine;
pub mod credibility;
pub mod divergence;
pub mod document;
mod error;
pub mod frame;
pub mod fusion;
pub mod mass;
mod scalar;

pub use combine::{conflict, dcr_n, dcr_pair, self_fuse};
pub use credibility::{
    build_edmm, build_eem, conditional_credibility, support_matrix, AverageSupport,
    ConditionalCredibility, CredibilityVector, Edmm, Eem, InitialProbability,
};
pub use divergence::{bjs, pbagd, Bjs, DivergenceMeasure, LogBase, MeasureKind, Pbagd};
pub use document::{DocumentConfig, EvidenceDocument};
pub use error::{Error, Result};
pub use frame::{FrameOfDiscernment, Subset, MAX_EVENTS};
pub use fusion::{
    cef_average_fuse, cef_eigen_fuse, cef_fuse, dcr_fuse, decide, icef, murphy_fuse,
    weighted_average, FusionMethod, FusionResult, IcefConfig, IcefRun, IcefStep, IcefTrace,
    TraceMode,
};
pub use mass::{MassFunction, PignisticDistribution};
pub use scalar::Scalar;

pub type Mass = MassFunction<f64>;
pub type Mass32 = MassFunction<f32>;
pub type Pignistic = PignisticDistribution<f64>;
pub type Pignistic32 = PignisticDistribution<f32>;
pub type Credibility = CredibilityVector<f64>;
pub type Credibility32 = CredibilityVector<f32>;
pub type Config = IcefConfig<f64>;
pub type Config32 = IcefConfig<f32>;
pub type Run = IcefRun<f64>;
pub type Run32 = IcefRun<f32>;
pub type Document = EvidenceDocument<f64>;
pub type Document32 = EvidenceDocument<f32>;
