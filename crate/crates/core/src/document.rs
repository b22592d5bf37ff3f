//! TOML evidence documents.
//!
//! ```toml
//! frame = ["A1", "A2", "A3"]
//!
//! [config]
//! tau = 200.0
//!
//! [[evidence]]
//! name = "m1"
//! masses = { "A1" = 0.7, "A2" = 0.1, "A1,A2,A3" = 0.2 }
//! ```

use std::fs;
use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::builtin::EvidenceSet;
use crate::error::{Error, Result};
use crate::frame::FrameOfDiscernment;
use crate::fusion::IcefConfig;
use crate::mass::MassFunction;
use crate::scalar::Scalar;

/// Optional overrides of the iteration parameters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

impl DocumentConfig {
    fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    pub fn apply<T: Scalar>(&self, cfg: &mut IcefConfig<T>) {
        if let Some(tau) = self.tau {
            cfg.tau = T::of(tau);
        }
        if let Some(delta) = self.delta {
            cfg.delta = T::of(delta);
        }
        if let Some(max_iter) = self.max_iter {
            cfg.max_iter = max_iter;
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    frame: Vec<String>,
    #[serde(default, skip_serializing_if = "DocumentConfig::is_empty")]
    config: DocumentConfig,
    #[serde(default)]
    evidence: Vec<RawEvidence>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvidence {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    masses: IndexMap<String, f64>,
}

/// A frame, its named mass functions and optional configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceDocument<T: Scalar = f64> {
    pub frame: Arc<FrameOfDiscernment>,
    pub names: Vec<String>,
    pub evidence: Vec<MassFunction<T>>,
    pub config: DocumentConfig,
}

impl<T: Scalar> EvidenceDocument<T> {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument =
            toml::from_str(text).map_err(|e| Error::Document(e.message().to_string()))?;
        let frame = Arc::new(FrameOfDiscernment::new(raw.frame)?);
        if raw.evidence.is_empty() {
            return Err(Error::Document("no evidence given".into()));
        }
        let mut names = Vec::with_capacity(raw.evidence.len());
        let mut evidence = Vec::with_capacity(raw.evidence.len());
        for (i, ev) in raw.evidence.into_iter().enumerate() {
            let entries = ev
                .masses
                .iter()
                .map(|(k, &v)| Ok((frame.parse_subset(k)?, T::of(v))))
                .collect::<Result<Vec<_>>>()?;
            evidence.push(MassFunction::new(Arc::clone(&frame), entries)?);
            names.push(ev.name.unwrap_or_else(|| format!("m{}", i + 1)));
        }
        if let Some(tau) = raw.config.tau {
            if !(tau > 0.0) {
                return Err(Error::NonpositiveTau(tau));
            }
        }
        Ok(Self {
            frame,
            names,
            evidence,
            config: raw.config,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        let raw = RawDocument {
            frame: self.frame.labels().to_vec(),
            config: self.config,
            evidence: self
                .names
                .iter()
                .zip(&self.evidence)
                .map(|(name, m)| RawEvidence {
                    name: Some(name.clone()),
                    masses: m
                        .focal()
                        .map(|(s, x)| (self.frame.format_subset(s), x.as_f64()))
                        .collect(),
                })
                .collect(),
        };
        toml::to_string(&raw).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn into_set(self) -> EvidenceSet<T> {
        EvidenceSet {
            frame: self.frame,
            names: self.names,
            evidence: self.evidence,
        }
    }
}

impl<T: Scalar> From<EvidenceSet<T>> for EvidenceDocument<T> {
    fn from(set: EvidenceSet<T>) -> Self {
        Self {
            frame: set.frame,
            names: set.names,
            evidence: set.evidence,
            config: DocumentConfig::default(),
        }
    }
}
