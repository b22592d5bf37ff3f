mod common;

use common::mass_list;
use icef::fusion::fixed_point_residual;
use icef::{
    builtin, icef, murphy_fuse, weighted_average, Credibility, IcefConfig, InitialProbability,
    Subset,
};
use proptest::prelude::*;

fn weights(n: usize) -> impl Strategy<Value = Credibility> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(Credibility::normalized)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weighted_average_is_valid((ms, w) in mass_list(4, 1..=5).prop_flat_map(|ms| {
        let n = ms.len();
        (Just(ms), weights(n))
    })) {
        let avg = weighted_average(&ms, &w).unwrap();
        avg.validate().unwrap();
    }

    #[test]
    fn icef_trace_rows_are_distributions(ms in mass_list(4, 1..=5)) {
        let frame = ms[0].frame().clone();
        if let Ok(run) = icef(&ms, &frame, &IcefConfig::default()) {
            for step in &run.trace.steps {
                prop_assert!((step.probabilities.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
                prop_assert!((step.next.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
                prop_assert!((step.credibility.values().iter().sum::<f64>() - 1.0).abs() <= 1e-9);
                step.fused.validate().unwrap();
            }
            if run.trace.converged {
                let last = run.trace.last();
                let r = fixed_point_residual(&ms, &run.conditional, &last.next).unwrap();
                prop_assert!(r <= 1e-6 + 1e-9, "residual {r}");
            }
        }
    }

    #[test]
    fn icef_is_evidence_order_equivariant(ms in mass_list(3, 2..=5), shift in 1usize..5) {
        let n = ms.len();
        let rotated: Vec<_> = (0..n).map(|i| ms[(i + shift) % n].clone()).collect();
        let frame = ms[0].frame().clone();
        if let (Ok(a), Ok(b)) = (icef(&ms, &frame, &IcefConfig::default()), icef(&rotated, &frame, &IcefConfig::default())) {
            let (ca, cb) = (a.trace.last().credibility.values(), b.trace.last().credibility.values());
            for i in 0..n {
                prop_assert!((cb[i] - ca[(i + shift) % n]).abs() <= 1e-9);
            }
            for s in frame.nonempty_subsets() {
                prop_assert!((a.result.fused.mass(s) - b.result.fused.mass(s)).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn identical_evidence_matches_murphy(ms in mass_list(4, 1..=1), copies in 2usize..5) {
        let ev = vec![ms[0].clone(); copies];
        let frame = ms[0].frame().clone();
        if let (Ok(run), Ok(m)) = (icef(&ev, &frame, &IcefConfig::default()), murphy_fuse(&ev)) {
            for s in frame.nonempty_subsets() {
                prop_assert!((run.result.fused.mass(s) - m.fused.mass(s)).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn initializations_reach_the_same_fixed_point() {
    for set in [builtin::fault_diagnosis::<f64>(), builtin::multi_sensor()] {
        let runs: Vec<_> = [InitialProbability::Uniform, InitialProbability::FromEem]
            .into_iter()
            .map(|init| {
                let cfg = IcefConfig {
                    init,
                    ..IcefConfig::default()
                };
                icef(&set.evidence, &set.frame, &cfg)
                    .unwrap()
                    .require_converged()
                    .unwrap()
            })
            .collect();
        let (a, b) = (runs[0].trace.last(), runs[1].trace.last());
        for (x, y) in a.credibility.values().iter().zip(b.credibility.values()) {
            assert!((x - y).abs() < 1e-3);
        }
    }
}

#[test]
fn eem_initialization_is_not_slower() {
    let set = builtin::fault_diagnosis::<f64>();
    let steps = |init| {
        let cfg = IcefConfig {
            init,
            ..IcefConfig::default()
        };
        icef(&set.evidence, &set.frame, &cfg)
            .unwrap()
            .trace
            .steps_used
    };
    assert!(steps(InitialProbability::FromEem) <= steps(InitialProbability::Uniform));
}

#[test]
fn disturbed_sensor_is_suppressed() {
    let set = builtin::fault_diagnosis::<f64>();
    let run = icef(&set.evidence, &set.frame, &IcefConfig::default()).unwrap();
    assert!(run.trace.last().credibility.values()[4] < 0.01);
}

#[test]
fn early_steps_of_both_initializations() {
    let set = builtin::fault_diagnosis::<f64>();
    let cases = [
        (
            InitialProbability::Uniform,
            [
                [0.1277, 0.1049, 0.2676, 0.1101, 0.3897],
                [0.1726, 0.2087, 0.1256, 0.2306, 0.2626],
            ],
        ),
        (
            InitialProbability::FromEem,
            [
                [0.1706, 0.1807, 0.2144, 0.1966, 0.2378],
                [0.2255, 0.2752, 0.1555, 0.3043, 0.0395],
            ],
        ),
    ];
    for (init, rows) in cases {
        let cfg = IcefConfig {
            init,
            ..IcefConfig::default()
        };
        let run = icef(&set.evidence, &set.frame, &cfg).unwrap();
        for (step, want) in run.trace.steps.iter().zip(rows) {
            for (got, want) in step.credibility.values().iter().zip(want) {
                assert!(
                    (got - want).abs() < 1e-4,
                    "{init:?} step {}: {got} vs {want}",
                    step.step
                );
            }
        }
    }
}

#[test]
fn single_precision_run_agrees() {
    let set = builtin::fault_diagnosis::<f32>();
    let cfg = IcefConfig::<f32> {
        delta: 1e-5,
        ..IcefConfig::default()
    };
    let run = icef(&set.evidence, &set.frame, &cfg).unwrap();
    let a1: f32 = run.result.fused.mass(Subset(1));
    assert!((a1 - 0.9974).abs() < 2e-3);
}
