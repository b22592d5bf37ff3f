use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fusion::{FusionMethod, FusionResult, IcefConfig, TraceMode};

use super::dataset::Dataset;
use super::interval::IntervalModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierConfig {
    /// Similarity scale of the interval base classifier.
    pub lambda: f64,
    pub icef: IcefConfig<f64>,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            lambda: 5.0,
            icef: IcefConfig {
                trace: TraceMode::Light,
                ..IcefConfig::default()
            },
        }
    }
}

/// Fuses one BBA per attribute and decides by maximum pignistic probability.
pub fn classify_sample(
    model: &IntervalModel,
    sample: &[f64],
    method: FusionMethod,
    cfg: &ClassifierConfig,
) -> Result<(usize, FusionResult)> {
    if model.attribute_count() < 2 {
        return Err(Error::NotEnoughEvidence(2));
    }
    let evidence = model.evidence(sample)?;
    let result = method.fuse(&evidence, model.frame(), &cfg.icef)?;
    Ok((result.decision, result))
}

/// Accuracy of one method, pooled over every evaluated record.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub method: String,
    pub classes: Vec<String>,
    pub correct: Vec<usize>,
    pub tested: Vec<usize>,
    /// Samples whose fusion hit total conflict; already counted as wrong.
    pub failures: usize,
    /// Total accuracy of each trial, in trial order.
    pub trials: Vec<f64>,
    pub lambda: f64,
    pub tau: f64,
    /// Training fraction in percent.
    pub train_percent: u32,
}

impl EvaluationReport {
    fn empty(
        method: FusionMethod,
        classes: &[String],
        cfg: &ClassifierConfig,
        train_percent: u32,
    ) -> Self {
        Self {
            method: method.name().to_string(),
            classes: classes.to_vec(),
            correct: vec![0; classes.len()],
            tested: vec![0; classes.len()],
            failures: 0,
            trials: Vec::new(),
            lambda: cfg.lambda,
            tau: cfg.icef.tau,
            train_percent,
        }
    }

    pub fn class_accuracy(&self, class: usize) -> f64 {
        match self.tested[class] {
            0 => 0.0,
            n => self.correct[class] as f64 / n as f64,
        }
    }

    pub fn total_accuracy(&self) -> f64 {
        let n: usize = self.tested.iter().sum();
        if n == 0 {
            0.0
        } else {
            self.correct.iter().sum::<usize>() as f64 / n as f64
        }
    }

    /// Mean of the per-trial accuracies.
    pub fn mean_trial_accuracy(&self) -> f64 {
        if self.trials.is_empty() {
            self.total_accuracy()
        } else {
            self.trials.iter().sum::<f64>() / self.trials.len() as f64
        }
    }

    /// Pools counts and appends the trial series of `other`.
    pub fn merge(mut self, other: &EvaluationReport) -> Self {
        for c in 0..self.correct.len() {
            self.correct[c] += other.correct[c];
            self.tested[c] += other.tested[c];
        }
        self.failures += other.failures;
        self.trials.extend_from_slice(&other.trials);
        self
    }
}

fn evaluate_split(
    ds: &Dataset,
    train: &[usize],
    test: &[usize],
    methods: &[FusionMethod],
    cfg: &ClassifierConfig,
    train_percent: u32,
) -> Result<Vec<EvaluationReport>> {
    let model = IntervalModel::fit(&ds.select(train), cfg.lambda)?;
    let mut reports: Vec<_> = methods
        .iter()
        .map(|&m| EvaluationReport::empty(m, ds.classes(), cfg, train_percent))
        .collect();
    for &i in test {
        let rec = &ds.records()[i];
        for (report, &method) in reports.iter_mut().zip(methods) {
            report.tested[rec.class] += 1;
            match classify_sample(&model, &rec.features, method, cfg) {
                Ok((decision, _)) if decision == rec.class => report.correct[rec.class] += 1,
                Ok(_) => {}
                Err(Error::TotalConflict(_)) => report.failures += 1,
                Err(e) => return Err(e),
            }
        }
    }
    for r in &mut reports {
        let acc = r.total_accuracy();
        r.trials.push(acc);
    }
    Ok(reports)
}

/// Training fractions 50%..=100% in 1% steps; the whole dataset is the test set.
///
/// Training rows are the first `ceil(f·n_c)` records of each class. The result
/// holds 51 reports per method, grouped by method in `methods` order.
pub fn sweep_evaluate(
    ds: &Dataset,
    methods: &[FusionMethod],
    cfg: &ClassifierConfig,
) -> Result<Vec<EvaluationReport>> {
    let by_class = ds.class_indices();
    let all: Vec<usize> = (0..ds.len()).collect();
    let per_fraction = (50u32..=100)
        .into_par_iter()
        .map(|pct| {
            let train: Vec<usize> = by_class
                .iter()
                .flat_map(|idx| {
                    idx[..(pct as usize * idx.len()).div_ceil(100)]
                        .iter()
                        .copied()
                })
                .collect();
            evaluate_split(ds, &train, &all, methods, cfg, pct)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..methods.len())
        .flat_map(|m| per_fraction.iter().map(move |reports| reports[m].clone()))
        .collect())
}

/// Stratified 70/30 split of trial `trial` under `seed`.
pub fn stratified_split(ds: &Dataset, seed: u64, trial: u64) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for mut idx in ds.class_indices() {
        idx.shuffle(&mut rng);
        let k = ((idx.len() as f64) * 0.7).round() as usize;
        let k = k.clamp(1.min(idx.len()), idx.len());
        train.extend_from_slice(&idx[..k]);
        test.extend_from_slice(&idx[k..]);
    }
    (train, test)
}

/// Repeated random 70/30 evaluation. Each trial depends only on
/// `(dataset, seed, trial index)`, so the report is identical across runs and
/// thread counts. Returns one pooled report per method.
pub fn monte_carlo_evaluate(
    ds: &Dataset,
    trials: usize,
    seed: u64,
    methods: &[FusionMethod],
    cfg: &ClassifierConfig,
) -> Result<Vec<EvaluationReport>> {
    if trials == 0 {
        return Err(Error::InvalidConfig("at least one trial required".into()));
    }
    let per_trial = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let (train, test) = stratified_split(ds, seed, t);
            evaluate_split(ds, &train, &test, methods, cfg, 70)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..methods.len())
        .map(|m| {
            let first = EvaluationReport::empty(methods[m], ds.classes(), cfg, 70);
            per_trial.iter().fold(first, |acc, r| acc.merge(&r[m]))
        })
        .collect())
}

/// Writes rows `class, acc(method1), ...` with a final `Total` row.
pub fn write_accuracy_table<W: Write>(
    reports: &[EvaluationReport],
    out: W,
    precision: usize,
) -> Result<()> {
    let Some(first) = reports.first() else {
        return Ok(());
    };
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["class".to_string()];
    header.extend(reports.iter().map(|r| r.method.clone()));
    w.write_record(&header)?;
    for (c, name) in first.classes.iter().enumerate() {
        let mut row = vec![name.clone()];
        row.extend(
            reports
                .iter()
                .map(|r| format!("{:.*}", precision, r.class_accuracy(c))),
        );
        w.write_record(&row)?;
    }
    let mut total = vec!["Total".to_string()];
    total.extend(
        reports
            .iter()
            .map(|r| format!("{:.*}", precision, r.total_accuracy())),
    );
    w.write_record(&total)?;
    w.flush()?;
    Ok(())
}

/// Writes one row per report: `method, train_percent, acc(class)..., total`.
pub fn write_sweep_table<W: Write>(
    reports: &[EvaluationReport],
    out: W,
    precision: usize,
) -> Result<()> {
    let Some(first) = reports.first() else {
        return Ok(());
    };
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["method".to_string(), "train_percent".to_string()];
    header.extend(first.classes.iter().cloned());
    header.push("Total".into());
    w.write_record(&header)?;
    for r in reports {
        let mut row = vec![r.method.clone(), r.train_percent.to_string()];
        row.extend((0..r.classes.len()).map(|c| format!("{:.*}", precision, r.class_accuracy(c))));
        row.push(format!("{:.*}", precision, r.total_accuracy()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
