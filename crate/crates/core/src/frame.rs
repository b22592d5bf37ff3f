//! Frames of discernment and bitmask-encoded subsets.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported frame. Power-set transforms touch all `2^n - 1` nonempty
/// subsets, so the cap keeps them near one million entries.
pub const MAX_EVENTS: usize = 20;

/// Ordered, duplicate-free list of mutually exclusive events.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrameOfDiscernment {
    labels: Vec<String>,
}

impl FrameOfDiscernment {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels
            .into_iter()
            .map(|s| s.into().trim().to_string())
            .collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_EVENTS {
            return Err(Error::TooManyEvents(labels.len()));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() || label.contains(',') {
                return Err(Error::UnknownLabel(label.clone()));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Frame `A1, A2, ..., An`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|j| format!("A{j}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label.trim())
    }

    /// The whole frame, Ω.
    pub fn full(&self) -> Subset {
        Subset((((1u64) << self.len()) - 1) as u32)
    }

    pub fn singleton(&self, index: usize) -> Result<Subset> {
        if index >= self.len() {
            return Err(Error::EventOutOfRange {
                index,
                n: self.len(),
            });
        }
        Ok(Subset(1 << index))
    }

    pub fn contains(&self, subset: Subset) -> bool {
        subset.0 & !self.full().0 == 0
    }

    /// Number of subsets including ∅, `2^n`.
    pub fn power_set_len(&self) -> usize {
        1usize << self.len()
    }

    /// All nonempty subsets in ascending bitmask order.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Subset> {
        (1..=self.full().0).map(Subset)
    }

    /// Parses a comma-joined label list such as `"A1,A3"`.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let mut bits = 0u32;
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let index = self
                .index_of(part)
                .ok_or_else(|| Error::UnknownLabel(part.to_string()))?;
            bits |= 1 << index;
        }
        if bits == 0 {
            return Err(Error::EmptySetFocal);
        }
        Ok(Subset(bits))
    }

    pub fn format_subset(&self, subset: Subset) -> String {
        subset
            .members()
            .map(|j| self.labels.get(j).map(String::as_str).unwrap_or("?"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for FrameOfDiscernment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

/// Shared frames compare by pointer first.
pub(crate) fn same_frame(a: &Arc<FrameOfDiscernment>, b: &Arc<FrameOfDiscernment>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Subset of a frame; bit `j` set means event `j` is a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains_event(self, index: usize) -> bool {
        index < 32 && self.0 >> index & 1 == 1
    }

    /// Event indices in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(j)
            }
        })
    }

    /// The first `count` events, `{A1, ..., A_count}`.
    pub fn prefix(count: usize) -> Subset {
        Subset(((1u64 << count) - 1) as u32)
    }
}
