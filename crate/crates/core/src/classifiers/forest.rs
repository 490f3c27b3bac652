use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tree::grow;
use super::{check_dim, contract, ClassifierError, Dataset, DecisionTree};
use crate::pose::Label;
use crate::Scalar;

/// Bagged CART trees with per-node feature subsampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ForestModel<T: Scalar> {
    pub n_trees: usize,
    pub seed: u64,
    pub features_per_split: usize,
    pub dim: usize,
    pub trees: Vec<DecisionTree<T>>,
}

/// Generator for tree `tree_index`: the seed's ChaCha stream number
/// `tree_index`, so trees are independent of training order.
fn tree_rng(seed: u64, tree_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tree_index as u64);
    rng
}

/// Trains `n_trees` trees, each on a bootstrap sample of `|data|` rows, with
/// `floor(sqrt(d))` features considered per split.
pub fn train_forest<T: Scalar>(
    data: &Dataset<T>,
    n_trees: usize,
    seed: u64,
) -> Result<ForestModel<T>, ClassifierError> {
    if data.is_empty() {
        return contract("cannot train a forest on an empty dataset");
    }
    if n_trees == 0 {
        return contract("a forest needs at least one tree");
    }
    let dim = data.dim();
    let features_per_split = ((dim as f64).sqrt().floor() as usize).max(1);
    let n = data.len();
    let weights = vec![T::one(); n];
    let trees = (0..n_trees)
        .map(|t| {
            let mut rng = tree_rng(seed, t);
            let sample: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            grow(
                data,
                &sample,
                &weights,
                Some(features_per_split),
                None,
                &mut rng,
            )
        })
        .collect();
    Ok(ForestModel {
        n_trees,
        seed,
        features_per_split,
        dim,
        trees,
    })
}

impl<T: Scalar> ForestModel<T> {
    /// Votes per class; sums to `n_trees`.
    pub fn vote_counts(&self, x: &[T]) -> Result<[usize; 2], ClassifierError> {
        check_dim(self.dim, x)?;
        let mut votes = [0; 2];
        for t in &self.trees {
            votes[t.predict_unchecked(x).index()] += 1;
        }
        Ok(votes)
    }

    pub fn predict(&self, x: &[T]) -> Result<Label, ClassifierError> {
        let v = self.vote_counts(x)?;
        Ok(if v[1] > v[0] {
            Label::Fight
        } else {
            Label::NonFight
        })
    }
}
