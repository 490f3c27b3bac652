use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    knn_predict, train_adaboost, train_forest, train_knn, train_tree, BoostModel, ClassifierError,
    Dataset, DecisionTree, ForestModel, KnnModel,
};
use crate::pose::Label;
use crate::Scalar;

/// Value of the `format` field of a model file.
pub const MODEL_FORMAT: &str = "difem-model";
pub const MODEL_VERSION: u32 = 1;

/// Classifier choice with its hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "classifier", rename_all = "snake_case")]
pub enum ClassifierConfig {
    DecisionTree { seed: u64 },
    RandomForest { n_trees: usize, seed: u64 },
    AdaBoost { n_estimators: usize },
    Knn { k: usize },
}

impl ClassifierConfig {
    pub fn decision_tree() -> Self {
        ClassifierConfig::DecisionTree { seed: 0 }
    }

    pub fn random_forest(seed: u64) -> Self {
        ClassifierConfig::RandomForest { n_trees: 100, seed }
    }

    pub fn adaboost() -> Self {
        ClassifierConfig::AdaBoost { n_estimators: 100 }
    }

    pub fn knn() -> Self {
        ClassifierConfig::Knn { k: 5 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassifierConfig::DecisionTree { .. } => "decision_tree",
            ClassifierConfig::RandomForest { .. } => "random_forest",
            ClassifierConfig::AdaBoost { .. } => "ada_boost",
            ClassifierConfig::Knn { .. } => "knn",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", tag = "kind", rename_all = "snake_case")]
pub enum TrainedModel<T: Scalar> {
    DecisionTree {
        config: ClassifierConfig,
        tree: DecisionTree<T>,
    },
    RandomForest {
        config: ClassifierConfig,
        forest: ForestModel<T>,
    },
    AdaBoost {
        config: ClassifierConfig,
        boost: BoostModel<T>,
    },
    Knn {
        config: ClassifierConfig,
        knn: KnnModel<T>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct ModelFile<T: Scalar> {
    format: String,
    version: u32,
    model: TrainedModel<T>,
}

/// Trains the configured classifier.
pub fn fit<T: Scalar>(
    config: &ClassifierConfig,
    data: &Dataset<T>,
) -> Result<TrainedModel<T>, ClassifierError> {
    let config = *config;
    Ok(match config {
        ClassifierConfig::DecisionTree { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            TrainedModel::DecisionTree {
                config,
                tree: train_tree(data, None, &mut rng)?,
            }
        }
        ClassifierConfig::RandomForest { n_trees, seed } => TrainedModel::RandomForest {
            config,
            forest: train_forest(data, n_trees, seed)?,
        },
        ClassifierConfig::AdaBoost { n_estimators } => TrainedModel::AdaBoost {
            config,
            boost: train_adaboost(data, n_estimators)?,
        },
        ClassifierConfig::Knn { k } => TrainedModel::Knn {
            config,
            knn: train_knn(data, k)?,
        },
    })
}

/// Predicts one feature vector with any trained model.
pub fn predict<T: Scalar>(model: &TrainedModel<T>, x: &[T]) -> Result<Label, ClassifierError> {
    match model {
        TrainedModel::DecisionTree { tree, .. } => tree.predict(x),
        TrainedModel::RandomForest { forest, .. } => forest.predict(x),
        TrainedModel::AdaBoost { boost, .. } => boost.predict(x),
        TrainedModel::Knn { knn, .. } => knn_predict(knn, x),
    }
}

impl<T: Scalar> TrainedModel<T> {
    pub fn config(&self) -> &ClassifierConfig {
        match self {
            TrainedModel::DecisionTree { config, .. }
            | TrainedModel::RandomForest { config, .. }
            | TrainedModel::AdaBoost { config, .. }
            | TrainedModel::Knn { config, .. } => config,
        }
    }

    /// Feature dimension the model was trained on.
    pub fn dim(&self) -> usize {
        match self {
            TrainedModel::DecisionTree { tree, .. } => tree.dim,
            TrainedModel::RandomForest { forest, .. } => forest.dim,
            TrainedModel::AdaBoost { boost, .. } => boost.dim,
            TrainedModel::Knn { knn, .. } => knn.dim,
        }
    }

    pub fn predict(&self, x: &[T]) -> Result<Label, ClassifierError> {
        predict(self, x)
    }

    pub fn predict_all(&self, rows: &[Vec<T>]) -> Result<Vec<Label>, ClassifierError> {
        rows.iter().map(|r| self.predict(r)).collect()
    }

    /// Pretty-printed JSON model file. Identical models give identical bytes.
    pub fn to_json(&self) -> String {
        let file = ModelFile {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            model: self.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, ClassifierError> {
        let file: ModelFile<T> =
            serde_json::from_str(s).map_err(|e| ClassifierError::Format(e.to_string()))?;
        if file.format != MODEL_FORMAT {
            return Err(ClassifierError::Format(format!(
                "unexpected format {:?}",
                file.format
            )));
        }
        if file.version != MODEL_VERSION {
            return Err(ClassifierError::Format(format!(
                "unsupported version {}",
                file.version
            )));
        }
        Ok(file.model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data() -> Dataset<f64> {
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|i| vec![(i % 10) as f64 + 0.5 * (i / 10) as f64, (i * 3 % 7) as f64])
            .collect();
        let labels = (0..30)
            .map(|i| {
                if i % 10 >= 5 {
                    Label::Fight
                } else {
                    Label::NonFight
                }
            })
            .collect();
        Dataset::new(rows, labels).unwrap()
    }

    fn configs() -> [ClassifierConfig; 4] {
        [
            ClassifierConfig::decision_tree(),
            ClassifierConfig::RandomForest {
                n_trees: 10,
                seed: 3,
            },
            ClassifierConfig::adaboost(),
            ClassifierConfig::knn(),
        ]
    }

    #[test]
    fn json_round_trip_preserves_predictions() {
        let d = data();
        for cfg in configs() {
            let m = fit(&cfg, &d).unwrap();
            let text = m.to_json();
            let back = TrainedModel::<f64>::from_json(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(back.to_json(), text);
            assert_eq!(
                back.predict_all(d.rows()).unwrap(),
                m.predict_all(d.rows()).unwrap()
            );
            assert_eq!(back.config(), &cfg);
        }
    }

    #[test]
    fn rejects_other_dimensions() {
        let d = data();
        for cfg in configs() {
            let m = fit(&cfg, &d).unwrap();
            assert_eq!(m.dim(), 2);
            assert_eq!(
                m.predict(&[1.0, 2.0, 3.0]),
                Err(ClassifierError::Dimension {
                    expected: 2,
                    found: 3
                })
            );
        }
    }

    #[test]
    fn bad_files() {
        assert!(matches!(
            TrainedModel::<f64>::from_json("{"),
            Err(ClassifierError::Format(_))
        ));
        let m = fit(&ClassifierConfig::knn(), &data()).unwrap();
        let text = m.to_json().replace("\"version\": 1", "\"version\": 9");
        assert!(TrainedModel::<f64>::from_json(&text).is_err());
    }

    #[test]
    fn config_serialization() {
        let s = serde_json::to_string(&ClassifierConfig::random_forest(42)).unwrap();
        assert_eq!(
            s,
            r#"{"classifier":"random_forest","n_trees":100,"seed":42}"#
        );
    }
}
