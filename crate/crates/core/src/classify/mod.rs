//! Interval-number base classifier and the evaluation harnesses built on it.
//!
//! Each attribute of a sample becomes one BBA over the class frame, the BBAs
//! are fused, and the class with the highest pignistic probability wins.

mod dataset;
mod evaluate;
mod interval;

pub use dataset::{load_dataset, read_dataset, Dataset, Record, Schema};
pub use evaluate::{
    classify_sample, monte_carlo_evaluate, stratified_split, sweep_evaluate, write_accuracy_table,
    write_sweep_table, ClassifierConfig, EvaluationReport,
};
pub use interval::{interval_distance, Interval, IntervalModel};
