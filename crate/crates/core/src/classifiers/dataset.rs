use super::{contract, ClassifierError};
use crate::features::FeatureVector;
use crate::pose::Label;
use crate::Scalar;

/// Labeled rows of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T: Scalar> {
    rows: Vec<Vec<T>>,
    labels: Vec<Label>,
    dim: usize,
}

impl<T: Scalar> Dataset<T> {
    pub fn new(rows: Vec<Vec<T>>, labels: Vec<Label>) -> Result<Self, ClassifierError> {
        if rows.len() != labels.len() {
            return contract(format!("{} rows but {} labels", rows.len(), labels.len()));
        }
        let dim = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != dim) {
            return contract(format!(
                "row {i} has dimension {}, expected {dim}",
                rows[i].len()
            ));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return contract("non-finite feature value");
        }
        Ok(Dataset { rows, labels, dim })
    }

    /// Rows from feature vectors using only their enabled groups.
    pub fn from_features<'a>(
        items: impl IntoIterator<Item = (&'a FeatureVector<T>, Label)>,
    ) -> Result<Self, ClassifierError> {
        let (rows, labels) = items
            .into_iter()
            .map(|(fv, l)| (fv.enabled_values(), l))
            .unzip();
        Dataset::new(rows, labels)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn class_counts(&self) -> [usize; 2] {
        let mut c = [0; 2];
        for l in &self.labels {
            c[l.index()] += 1;
        }
        c
    }

    /// A new dataset holding the given rows (repeats allowed).
    pub fn subset(&self, indices: &[usize]) -> Dataset<T> {
        Dataset {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            dim: self.dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_rows() {
        let r = Dataset::new(vec![vec![1.0, 2.0], vec![1.0]], vec![Label::Fight; 2]);
        assert!(matches!(r, Err(ClassifierError::ContractViolation(_))));
        let r = Dataset::new(vec![vec![1.0]], vec![]);
        assert!(r.is_err());
        let r = Dataset::new(vec![vec![f64::NAN]], vec![Label::Fight]);
        assert!(r.is_err());
    }

    #[test]
    fn counts_and_subset() {
        let d = Dataset::new(
            vec![vec![0.0], vec![1.0], vec![2.0]],
            vec![Label::NonFight, Label::Fight, Label::Fight],
        )
        .unwrap();
        assert_eq!(d.class_counts(), [1, 2]);
        let s = d.subset(&[2, 2, 0]);
        assert_eq!(s.rows(), &[vec![2.0], vec![2.0], vec![0.0]]);
        assert_eq!(s.class_counts(), [1, 2]);
    }
}
