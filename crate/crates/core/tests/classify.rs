use icef::classify::{
    classify_sample, interval_distance, load_dataset, monte_carlo_evaluate, stratified_split,
    sweep_evaluate, ClassifierConfig, Dataset, Interval, IntervalModel, Record, Schema,
};
use icef::FusionMethod;
use proptest::prelude::*;

fn iris() -> Dataset {
    load_dataset(
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/iris.csv"),
        &Schema::with_label("species"),
    )
    .unwrap()
}

fn dataset_strategy() -> impl Strategy<Value = Dataset> {
    (2usize..4, 2usize..4).prop_flat_map(|(classes, attrs)| {
        prop::collection::vec(
            (prop::collection::vec(-10.0f64..10.0, attrs), 0..classes),
            classes * 2..classes * 6,
        )
        .prop_map(move |rows| {
            let mut records: Vec<Record> = rows
                .into_iter()
                .map(|(features, class)| Record { features, class })
                .collect();
            for (c, r) in records.iter_mut().take(classes).enumerate() {
                r.class = c;
            }
            Dataset::new(
                "random",
                (0..attrs).map(|a| format!("x{a}")).collect(),
                (0..classes).map(|c| format!("c{c}")).collect(),
                records,
            )
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn attribute_evidence_is_valid(ds in dataset_strategy(), x in -20.0f64..20.0, lambda in 0.01f64..50.0) {
        let model = IntervalModel::fit(&ds, lambda).unwrap();
        let mut sample = ds.records()[0].features.clone();
        sample[0] = x;
        for a in 0..ds.attribute_count() {
            let m = model.attribute_evidence(&sample, a).unwrap();
            m.validate().unwrap();
            let s = model.similarities(sample[a], a);
            let total: f64 = s.iter().sum();
            for (c, sc) in s.iter().enumerate() {
                let iv = model.interval(c, a);
                let direct = 1.0 / (1.0 + lambda * interval_distance(&iv, &Interval::point(sample[a])));
                prop_assert!((sc - direct).abs() <= 1e-15);
                prop_assert!((m.mass(icef::Subset(1 << c)) - sc / total).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn intervals_match_min_max_scan(ds in dataset_strategy()) {
        let model = IntervalModel::fit(&ds, 1.0).unwrap();
        for c in 0..ds.classes().len() {
            for a in 0..ds.attribute_count() {
                let vals: Vec<f64> = ds.records().iter().filter(|r| r.class == c).map(|r| r.features[a]).collect();
                let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                prop_assert_eq!(model.interval(c, a), Interval { lo, hi });
            }
        }
    }

    #[test]
    fn intervals_only_widen(ds in dataset_strategy(), extra in prop::collection::vec(-10.0f64..10.0, 3)) {
        let base = IntervalModel::fit(&ds, 1.0).unwrap();
        let mut records = ds.records().to_vec();
        records.push(Record { features: extra[..ds.attribute_count()].to_vec(), class: 0 });
        let grown = Dataset::new("g", ds.attributes().to_vec(), ds.classes().to_vec(), records).unwrap();
        let wider = IntervalModel::fit(&grown, 1.0).unwrap();
        for c in 0..ds.classes().len() {
            for a in 0..ds.attribute_count() {
                let (x, y) = (base.interval(c, a), wider.interval(c, a));
                prop_assert!(y.lo <= x.lo && y.hi >= x.hi);
            }
        }
    }

    #[test]
    fn decisions_survive_rescaling(ds in dataset_strategy(), scale in 0.1f64..10.0, offset in -5.0f64..5.0) {
        let cfg = ClassifierConfig { lambda: 2.0, ..ClassifierConfig::default() };
        let scaled_cfg = ClassifierConfig { lambda: 2.0 / scale, ..cfg };
        let records = ds
            .records()
            .iter()
            .map(|r| Record { features: r.features.iter().map(|x| x * scale + offset).collect(), class: r.class })
            .collect();
        let scaled = Dataset::new("s", ds.attributes().to_vec(), ds.classes().to_vec(), records).unwrap();
        let (m1, m2) = (IntervalModel::fit(&ds, cfg.lambda).unwrap(), IntervalModel::fit(&scaled, scaled_cfg.lambda).unwrap());
        for (r, s) in ds.records().iter().zip(scaled.records()) {
            for method in [FusionMethod::Dcr, FusionMethod::Murphy] {
                let a = classify_sample(&m1, &r.features, method, &cfg).unwrap();
                let b = classify_sample(&m2, &s.features, method, &scaled_cfg).unwrap();
                let p = &a.1.pignistic;
                let top = p.probs()[a.0];
                let runner_up = p.probs().iter().enumerate().filter(|&(i, _)| i != a.0).map(|(_, &v)| v).fold(0.0, f64::max);
                if top - runner_up > 1e-9 {
                    prop_assert_eq!(a.0, b.0);
                }
            }
        }
    }
}

#[test]
fn iris_shape() {
    let ds = iris();
    assert_eq!(ds.len(), 150);
    assert_eq!(ds.attribute_count(), 4);
    assert_eq!(ds.classes(), ["setosa", "versicolor", "virginica"]);
    assert!(ds.class_indices().iter().all(|c| c.len() == 50));
}

#[test]
fn iris_split_grid_matches_scan() {
    let ds = iris();
    let (train, _) = stratified_split(&ds, 11, 0);
    assert_eq!(train.len(), 105);
    let model = IntervalModel::fit(&ds.select(&train), 5.0).unwrap();
    for c in 0..3 {
        for a in 0..4 {
            let vals: Vec<f64> = train
                .iter()
                .map(|&i| &ds.records()[i])
                .filter(|r| r.class == c)
                .map(|r| r.features[a])
                .collect();
            let iv = model.interval(c, a);
            assert_eq!(iv.lo, vals.iter().copied().fold(f64::INFINITY, f64::min));
            assert_eq!(
                iv.hi,
                vals.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            );
        }
    }
}

#[test]
fn iris_monte_carlo_is_reproducible() {
    let ds = iris();
    let methods = [FusionMethod::Dcr, FusionMethod::Icef];
    let cfg = ClassifierConfig::default();
    let a = monte_carlo_evaluate(&ds, 10, 5, &methods, &cfg).unwrap();
    let b = monte_carlo_evaluate(&ds, 10, 5, &methods, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[0].trials.len(), 10);
    assert!(a.iter().all(|r| r.tested.iter().sum::<usize>() == 450));
}

#[test]
fn iris_full_training_is_resubstitution() {
    let ds = iris();
    let cfg = ClassifierConfig::default();
    let sweep = sweep_evaluate(&ds, &[FusionMethod::Icef], &cfg).unwrap();
    assert_eq!(sweep.len(), 51);
    let full = sweep.last().unwrap();
    assert_eq!(full.train_percent, 100);
    let model = IntervalModel::fit(&ds, cfg.lambda).unwrap();
    let correct = ds
        .records()
        .iter()
        .filter(|r| {
            classify_sample(&model, &r.features, FusionMethod::Icef, &cfg)
                .unwrap()
                .0
                == r.class
        })
        .count();
    assert_eq!(full.correct.iter().sum::<usize>(), correct);
    assert!(sweep
        .iter()
        .all(|r| (0.0..=1.0).contains(&r.total_accuracy())));
}
