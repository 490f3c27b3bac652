//! Decision tree, random forest, AdaBoost and k-nearest-neighbour classifiers
//! over real-valued feature vectors with two classes.
//!
//! Every tie resolves to [`Label::NonFight`](crate::pose::Label::NonFight) and all randomness flows from an
//! explicit seed, so training is reproducible bit for bit.

mod adaboost;
mod dataset;
mod forest;
mod knn;
mod model;
mod tree;

use thiserror::Error;

pub use adaboost::{
    stage_weight, train_adaboost, train_adaboost_observed, BoostModel, BoostStage,
    ZERO_ERROR_STAGE_WEIGHT,
};
pub use dataset::Dataset;
pub use forest::{train_forest, ForestModel};
pub use knn::{knn_predict, train_knn, KnnModel};
pub use model::{fit, predict, ClassifierConfig, TrainedModel, MODEL_FORMAT, MODEL_VERSION};
pub use tree::{gini, train_tree, DecisionTree, TreeNode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("dimension mismatch: model expects {expected} features, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("model file: {0}")]
    Format(String),
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T, ClassifierError> {
    Err(ClassifierError::ContractViolation(msg.into()))
}

pub(crate) fn check_dim(expected: usize, x: &[impl Sized]) -> Result<(), ClassifierError> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(ClassifierError::Dimension {
            expected,
            found: x.len(),
        })
    }
}
