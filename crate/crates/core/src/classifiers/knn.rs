use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{check_dim, contract, ClassifierError, Dataset};
use crate::pose::Label;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct KnnModel<T: Scalar> {
    pub k: usize,
    pub dim: usize,
    pub rows: Vec<Vec<T>>,
    pub labels: Vec<Label>,
}

pub fn train_knn<T: Scalar>(data: &Dataset<T>, k: usize) -> Result<KnnModel<T>, ClassifierError> {
    if k == 0 {
        return contract("k must be at least 1");
    }
    if data.len() < k {
        return contract(format!("k = {k} exceeds the {} stored rows", data.len()));
    }
    Ok(KnnModel {
        k,
        dim: data.dim(),
        rows: data.rows().to_vec(),
        labels: data.labels().to_vec(),
    })
}

impl<T: Scalar> KnnModel<T> {
    /// Stored-row indices of the `k` nearest neighbours, nearest first;
    /// equal distances keep the lower index first.
    pub fn neighbours(&self, query: &[T]) -> Result<Vec<usize>, ClassifierError> {
        check_dim(self.dim, query)?;
        if self.rows.len() < self.k {
            return contract(format!(
                "k = {} exceeds the {} stored rows",
                self.k,
                self.rows.len()
            ));
        }
        let mut d: Vec<(T, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let sq: T = r.iter().zip(query).map(|(&a, &b)| (a - b) * (a - b)).sum();
                (sq, i)
            })
            .collect();
        d.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap_or(Ordering::Equal)
                .then(a.1.cmp(&b.1))
        });
        Ok(d.into_iter().take(self.k).map(|(_, i)| i).collect())
    }
}

/// Majority label of the `k` nearest stored rows (Euclidean); vote ties go to
/// `NonFight`.
pub fn knn_predict<T: Scalar>(model: &KnnModel<T>, query: &[T]) -> Result<Label, ClassifierError> {
    let mut votes = [0usize; 2];
    for i in model.neighbours(query)? {
        votes[model.labels[i].index()] += 1;
    }
    Ok(if votes[1] > votes[0] {
        Label::Fight
    } else {
        Label::NonFight
    })
}
