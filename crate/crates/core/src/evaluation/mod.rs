//! Confusion matrices, per-class precision / recall / F1, and the two
//! evaluation protocols (fixed train/test split and stratified k-fold).

mod cv;
mod metrics;
mod report;

use thiserror::Error;

use crate::classifiers::ClassifierError;

pub use cv::{kfold_cv, stratified_folds, CvReport, MeanMetrics};
pub use metrics::{
    confusion, evaluate_model, metrics, ClassMetrics, ConfusionMatrix, EvaluationReport,
};
pub use report::{cv_report_csv, cv_report_text, report_csv, report_text, REPORT_CSV_HEADER};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("stratification: {0}")]
    Stratification(String),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
}
