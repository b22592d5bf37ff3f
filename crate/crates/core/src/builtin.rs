//! Evidence sets used throughout the literature on credible fusion, shipped
//! so that examples and regression tests need no external files.

use std::sync::Arc;

use crate::frame::{FrameOfDiscernment, Subset};
use crate::mass::MassFunction;
use crate::scalar::Scalar;

/// Named evidence list over a shared frame.
#[derive(Debug, Clone)]
pub struct EvidenceSet<T: Scalar = f64> {
    pub frame: Arc<FrameOfDiscernment>,
    pub names: Vec<String>,
    pub evidence: Vec<MassFunction<T>>,
}

fn build<T: Scalar>(n: usize, rows: &[&[(&str, f64)]]) -> EvidenceSet<T> {
    let frame = Arc::new(FrameOfDiscernment::numbered(n).expect("valid frame"));
    let evidence = rows
        .iter()
        .map(|r| {
            MassFunction::from_labels(Arc::clone(&frame), r.iter().map(|&(s, m)| (s, T::of(m))))
                .expect("builtin evidence is valid")
        })
        .collect();
    EvidenceSet {
        frame,
        names: (1..=rows.len()).map(|i| format!("m{i}")).collect(),
        evidence,
    }
}

/// Multi-sensor fault diagnosis: sensors 1-4 favour `A1`, sensor 5 is faulty.
pub fn fault_diagnosis<T: Scalar>() -> EvidenceSet<T> {
    build(
        3,
        &[
            &[("A1", 0.70), ("A2", 0.10), ("A1,A2,A3", 0.20)],
            &[("A1", 0.70), ("A1,A2,A3", 0.30)],
            &[("A1", 0.65), ("A2", 0.15), ("A1,A2,A3", 0.20)],
            &[("A1", 0.75), ("A3", 0.05), ("A1,A2,A3", 0.20)],
            &[("A2", 0.20), ("A3", 0.80)],
        ],
    )
}

/// Five sensors where `m3` supports the true event `A1` most strongly.
pub fn multi_sensor<T: Scalar>() -> EvidenceSet<T> {
    build(
        3,
        &[
            &[("A1", 0.40), ("A2", 0.28), ("A3", 0.30), ("A1,A3", 0.02)],
            &[("A1", 0.01), ("A2", 0.90), ("A3", 0.08), ("A1,A3", 0.01)],
            &[("A1", 0.63), ("A2", 0.06), ("A3", 0.01), ("A1,A3", 0.30)],
            &[("A1", 0.60), ("A2", 0.09), ("A3", 0.01), ("A1,A3", 0.30)],
            &[("A1", 0.60), ("A2", 0.09), ("A3", 0.01), ("A1,A3", 0.30)],
        ],
    )
}

/// Two BBAs with identical singleton focal elements.
pub fn identical_singletons<T: Scalar>() -> EvidenceSet<T> {
    let row: &[(&str, f64)] = &[("A1", 0.75), ("A2", 0.10), ("A3", 0.10), ("A4", 0.05)];
    build(4, &[row, row])
}

/// Two identical BBAs with a compound focal element.
pub fn identical_compound<T: Scalar>() -> EvidenceSet<T> {
    let row: &[(&str, f64)] = &[
        ("A1", 0.75),
        ("A2", 0.10),
        ("A3", 0.10),
        ("A1,A2,A3,A4", 0.05),
    ];
    build(4, &[row, row])
}

/// Two BBAs differing only in how much mass sits on `A1` versus Ω.
pub fn belief_shift<T: Scalar>() -> EvidenceSet<T> {
    build(
        4,
        &[
            &[
                ("A1", 0.75),
                ("A2", 0.10),
                ("A3", 0.10),
                ("A1,A2,A3,A4", 0.05),
            ],
            &[
                ("A1", 0.65),
                ("A2", 0.10),
                ("A3", 0.10),
                ("A1,A2,A3,A4", 0.15),
            ],
        ],
    )
}

/// Pair over ten events: `m1 = {A2: α, A_t: 1-α}`, `m2 = {A2: 0.95, A_t: 0.05}`
/// with `A_t = {A1, ..., At}`.
pub fn alpha_pair<T: Scalar>(alpha: T, t: usize) -> (MassFunction<T>, MassFunction<T>) {
    let frame = Arc::new(FrameOfDiscernment::numbered(10).expect("valid frame"));
    let a2 = Subset(0b10);
    let at = Subset::prefix(t);
    let m1 = MassFunction::new(Arc::clone(&frame), [(a2, alpha), (at, T::one() - alpha)])
        .expect("valid alpha pair");
    let m2 = MassFunction::new(frame, [(a2, T::of(0.95)), (at, T::of(0.05))]).expect("valid");
    (m1, m2)
}

/// Pair over eleven events whose second member is categorical on
/// `{A1, ..., A5}`; the first moves most of its mass to `A_t`.
///
/// `m1(A_t)` is 0.75 so that the masses sum to one.
pub fn moving_set_pair<T: Scalar>(t: usize) -> (MassFunction<T>, MassFunction<T>) {
    let frame = Arc::new(FrameOfDiscernment::numbered(11).expect("valid frame"));
    let m1 = MassFunction::new(
        Arc::clone(&frame),
        [
            (frame.full(), T::of(0.10)),
            (Subset(0b1110), T::of(0.05)),
            (Subset(1 << 6), T::of(0.10)),
            (Subset::prefix(t), T::of(0.75)),
        ],
    )
    .expect("valid moving-set pair");
    let m2 = MassFunction::new(frame, [(Subset::prefix(5), T::one())]).expect("valid");
    (m1, m2)
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "fault-diagnosis",
    "multi-sensor",
    "identical-singletons",
    "identical-compound",
    "belief-shift",
];

pub fn by_name<T: Scalar>(name: &str) -> Option<EvidenceSet<T>> {
    match name {
        "fault-diagnosis" => Some(fault_diagnosis()),
        "multi-sensor" => Some(multi_sensor()),
        "identical-singletons" => Some(identical_singletons()),
        "identical-compound" => Some(identical_compound()),
        "belief-shift" => Some(belief_shift()),
        _ => None,
    }
}
