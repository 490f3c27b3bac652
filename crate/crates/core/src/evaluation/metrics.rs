use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::classifiers::{Dataset, TrainedModel};
use crate::pose::Label;
use crate::Scalar;

/// Two-class confusion matrix; `Fight` is the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tn: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tp: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tn + self.fp + self.fn_ + self.tp
    }

    /// Cell count for a (truth, prediction) pair.
    pub fn cell(&self, truth: Label, pred: Label) -> usize {
        match (truth, pred) {
            (Label::NonFight, Label::NonFight) => self.tn,
            (Label::NonFight, Label::Fight) => self.fp,
            (Label::Fight, Label::NonFight) => self.fn_,
            (Label::Fight, Label::Fight) => self.tp,
        }
    }

    fn add(&mut self, truth: Label, pred: Label) {
        match (truth, pred) {
            (Label::NonFight, Label::NonFight) => self.tn += 1,
            (Label::NonFight, Label::Fight) => self.fp += 1,
            (Label::Fight, Label::NonFight) => self.fn_ += 1,
            (Label::Fight, Label::Fight) => self.tp += 1,
        }
    }
}

impl std::ops::Add for ConfusionMatrix {
    type Output = ConfusionMatrix;

    fn add(self, o: ConfusionMatrix) -> ConfusionMatrix {
        ConfusionMatrix {
            tn: self.tn + o.tn,
            fp: self.fp + o.fp,
            fn_: self.fn_ + o.fn_,
            tp: self.tp + o.tp,
        }
    }
}

pub fn confusion(preds: &[Label], truths: &[Label]) -> Result<ConfusionMatrix, EvalError> {
    if preds.len() != truths.len() {
        return Err(EvalError::ContractViolation(format!(
            "{} predictions for {} labels",
            preds.len(),
            truths.len()
        )));
    }
    if preds.is_empty() {
        return Err(EvalError::ContractViolation("nothing to evaluate".into()));
    }
    let mut cm = ConfusionMatrix::default();
    for (&p, &t) in preds.iter().zip(truths) {
        cm.add(t, p);
    }
    Ok(cm)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Number of samples truly of this class.
    pub support: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub confusion: ConfusionMatrix,
    pub accuracy: f64,
    /// Indexed by [`Label::index`].
    pub per_class: [ClassMetrics; 2],
}

impl EvaluationReport {
    pub fn class(&self, label: Label) -> &ClassMetrics {
        &self.per_class[label.index()]
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Accuracy and per-class precision / recall / F1. Every 0/0 is 0.
pub fn metrics(cm: &ConfusionMatrix) -> Result<EvaluationReport, EvalError> {
    let total = cm.total();
    if total == 0 {
        return Err(EvalError::ContractViolation(
            "empty confusion matrix".into(),
        ));
    }
    let per_class = Label::ALL.map(|c| {
        let other = match c {
            Label::Fight => Label::NonFight,
            Label::NonFight => Label::Fight,
        };
        let correct = cm.cell(c, c);
        let predicted = correct + cm.cell(other, c);
        let actual = correct + cm.cell(c, other);
        let precision = ratio(correct, predicted);
        let recall = ratio(correct, actual);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        ClassMetrics {
            precision,
            recall,
            f1,
            support: actual,
        }
    });
    Ok(EvaluationReport {
        confusion: *cm,
        accuracy: ratio(cm.tp + cm.tn, total),
        per_class,
    })
}

/// Scores a trained model on a labeled dataset (fixed-split protocol).
pub fn evaluate_model<T: Scalar>(
    model: &TrainedModel<T>,
    data: &Dataset<T>,
) -> Result<EvaluationReport, EvalError> {
    let preds = model.predict_all(data.rows())?;
    metrics(&confusion(&preds, data.labels())?)
}
