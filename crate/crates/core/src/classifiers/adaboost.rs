//! Discrete two-class AdaBoost (SAMME) over depth-1 Gini stumps.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tree::grow;
use super::{check_dim, contract, ClassifierError, Dataset, DecisionTree};
use crate::pose::Label;
use crate::Scalar;

/// Stage weight given to a stump with zero weighted training error:
/// `stage_weight(1e-10)`.
pub const ZERO_ERROR_STAGE_WEIGHT: f64 = 23.025850929840457;

/// `ln((1 - error) / error)`.
pub fn stage_weight<T: Scalar>(error: T) -> T {
    ((T::one() - error) / error).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BoostStage<T: Scalar> {
    pub stump: DecisionTree<T>,
    pub alpha: T,
    /// Weighted training error of the stump when it was fitted.
    pub error: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BoostModel<T: Scalar> {
    pub n_estimators: usize,
    pub dim: usize,
    pub stages: Vec<BoostStage<T>>,
}

fn signed(l: Label) -> f64 {
    match l {
        Label::Fight => 1.0,
        Label::NonFight => -1.0,
    }
}

/// Fits up to `n_estimators` stumps. Stops early after a stump with zero
/// weighted error (kept with [`ZERO_ERROR_STAGE_WEIGHT`]) or before one whose
/// error reaches 0.5 (discarded).
pub fn train_adaboost<T: Scalar>(
    data: &Dataset<T>,
    n_estimators: usize,
) -> Result<BoostModel<T>, ClassifierError> {
    train_adaboost_observed(data, n_estimators, |_| {})
}

/// As [`train_adaboost`], calling `observe` with the normalized sample weights
/// after every kept round.
pub fn train_adaboost_observed<T: Scalar>(
    data: &Dataset<T>,
    n_estimators: usize,
    mut observe: impl FnMut(&[T]),
) -> Result<BoostModel<T>, ClassifierError> {
    if data.is_empty() {
        return contract("cannot boost on an empty dataset");
    }
    let counts = data.class_counts();
    if counts[0] == 0 || counts[1] == 0 {
        return contract("AdaBoost needs both classes in the training data");
    }
    let n = data.len();
    let indices: Vec<usize> = (0..n).collect();
    let mut weights = vec![T::one() / T::of(n as f64); n];
    // stumps consider every feature, so the generator is never drawn from
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut stages = Vec::new();

    for _ in 0..n_estimators {
        let stump = grow(data, &indices, &weights, None, Some(1), &mut rng);
        let miss: Vec<bool> = (0..n)
            .map(|i| stump.predict_unchecked(data.row(i)) != data.label(i))
            .collect();
        let error: T = (0..n).filter(|&i| miss[i]).map(|i| weights[i]).sum();

        if error <= T::zero() {
            stages.push(BoostStage {
                stump,
                alpha: T::of(ZERO_ERROR_STAGE_WEIGHT),
                error: T::zero(),
            });
            observe(&weights);
            break;
        }
        if error >= T::of(0.5) {
            break;
        }
        let alpha = stage_weight(error);
        let boost = alpha.exp();
        for (w, &m) in weights.iter_mut().zip(&miss) {
            if m {
                *w = *w * boost;
            }
        }
        let total: T = weights.iter().copied().sum();
        for w in weights.iter_mut() {
            *w = *w / total;
        }
        stages.push(BoostStage {
            stump,
            alpha,
            error,
        });
        observe(&weights);
    }

    Ok(BoostModel {
        n_estimators,
        dim: data.dim(),
        stages,
    })
}

impl<T: Scalar> BoostModel<T> {
    /// `sum(alpha_m * h_m(x))` with `h_m` in {-1, +1}.
    pub fn decision(&self, x: &[T]) -> Result<T, ClassifierError> {
        check_dim(self.dim, x)?;
        Ok(self.decision_prefix(x, self.stages.len()))
    }

    /// Decision value using only the first `rounds` stages.
    pub fn decision_prefix(&self, x: &[T], rounds: usize) -> T {
        self.stages
            .iter()
            .take(rounds)
            .map(|s| s.alpha * T::of(signed(s.stump.predict_unchecked(x))))
            .sum()
    }

    pub fn predict(&self, x: &[T]) -> Result<Label, ClassifierError> {
        Ok(label_of(self.decision(x)?))
    }
}

pub(crate) fn label_of<T: Scalar>(decision: T) -> Label {
    if decision > T::zero() {
        Label::Fight
    } else {
        Label::NonFight
    }
}
