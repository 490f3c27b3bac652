//! CART classification tree with Gini impurity and midpoint thresholds.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{check_dim, contract, ClassifierError, Dataset};
use crate::pose::Label;
use crate::Scalar;

/// Gini impurity `1 - p0^2 - p1^2` of a class-count pair.
pub fn gini<T: Scalar>(class_counts: (usize, usize)) -> Result<T, ClassifierError> {
    let (n0, n1) = class_counts;
    if n0 + n1 == 0 {
        return contract("gini of an empty node");
    }
    Ok(weighted_gini([T::of(n0 as f64), T::of(n1 as f64)]))
}

fn weighted_gini<T: Scalar>(w: [T; 2]) -> T {
    let total = w[0] + w[1];
    if total <= T::zero() {
        return T::zero();
    }
    let p0 = w[0] / total;
    let p1 = w[1] / total;
    T::one() - p0 * p0 - p1 * p1
}

/// Node of a tree stored as an arena; `left`/`right` index into the arena.
/// Rows with `value <= threshold` go left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", rename_all = "snake_case")]
pub enum TreeNode<T: Scalar> {
    Leaf {
        class: Label,
        class_counts: [usize; 2],
    },
    Split {
        feature: usize,
        threshold: T,
        left: usize,
        right: usize,
    },
}

/// A fitted tree. `nodes[0]` is the root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DecisionTree<T: Scalar> {
    pub dim: usize,
    pub nodes: Vec<TreeNode<T>>,
}

impl<T: Scalar> DecisionTree<T> {
    /// Index of the leaf reached by `x`.
    pub fn leaf_index(&self, x: &[T]) -> usize {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                TreeNode::Leaf { .. } => return i,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if x[feature] <= threshold { left } else { right },
            }
        }
    }

    pub fn predict(&self, x: &[T]) -> Result<Label, ClassifierError> {
        check_dim(self.dim, x)?;
        Ok(self.predict_unchecked(x))
    }

    pub(crate) fn predict_unchecked(&self, x: &[T]) -> Label {
        match self.nodes[self.leaf_index(x)] {
            TreeNode::Leaf { class, .. } => class,
            TreeNode::Split { .. } => unreachable!("leaf_index returns leaves"),
        }
    }

    pub fn depth(&self) -> usize {
        fn go<T: Scalar>(nodes: &[TreeNode<T>], i: usize) -> usize {
            match nodes[i] {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { left, right, .. } => 1 + go(nodes, left).max(go(nodes, right)),
            }
        }
        go(&self.nodes, 0)
    }

    pub fn n_leaves(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, TreeNode::Leaf { .. }))
            .count()
    }
}

/// Fully grown CART tree (no depth limit).
///
/// With `max_features = Some(m)` each node draws a uniform random subset of
/// `m` features from `rng`; if none of them can split the node, the remaining
/// features are tried in the same random order.
pub fn train_tree<T: Scalar, R: Rng + ?Sized>(
    data: &Dataset<T>,
    max_features: Option<usize>,
    rng: &mut R,
) -> Result<DecisionTree<T>, ClassifierError> {
    if data.is_empty() {
        return contract("cannot train a tree on an empty dataset");
    }
    let indices: Vec<usize> = (0..data.len()).collect();
    let weights = vec![T::one(); data.len()];
    Ok(grow(data, &indices, &weights, max_features, None, rng))
}

struct SplitChoice<T> {
    feature: usize,
    threshold: T,
    decrease: T,
}

/// Grows a tree over `indices` (repeats allowed) with per-row `weights`.
pub(crate) fn grow<T: Scalar, R: Rng + ?Sized>(
    data: &Dataset<T>,
    indices: &[usize],
    weights: &[T],
    max_features: Option<usize>,
    max_depth: Option<usize>,
    rng: &mut R,
) -> DecisionTree<T> {
    let dim = data.dim();
    let mut nodes: Vec<TreeNode<T>> = Vec::new();
    // (arena slot, rows at node, depth)
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(0, indices.to_vec(), 0)];
    nodes.push(placeholder());
    let mut feature_order: Vec<usize> = (0..dim).collect();

    while let Some((slot, rows, depth)) = stack.pop() {
        let mut counts = [0usize; 2];
        let mut wsum = [T::zero(); 2];
        for &r in &rows {
            let c = data.label(r).index();
            counts[c] += 1;
            wsum[c] = wsum[c] + weights[r];
        }
        let class = if wsum[1] > wsum[0] {
            Label::Fight
        } else {
            Label::NonFight
        };
        let leaf = TreeNode::Leaf {
            class,
            class_counts: counts,
        };
        let pure = counts[0] == 0 || counts[1] == 0;
        if pure || max_depth.is_some_and(|m| depth >= m) {
            nodes[slot] = leaf;
            continue;
        }

        let m = max_features.map_or(dim, |m| m.clamp(1, dim));
        if m < dim {
            feature_order.shuffle(rng);
        } else {
            feature_order.sort_unstable();
        }
        let mut best: Option<SplitChoice<T>> = None;
        for (visited, &f) in feature_order.iter().enumerate() {
            if visited >= m && best.is_some() {
                break;
            }
            if let Some(c) = best_split_on(data, &rows, weights, f, wsum) {
                if best.as_ref().is_none_or(|b| c.decrease > b.decrease) {
                    best = Some(c);
                }
            }
        }

        let Some(split) = best else {
            nodes[slot] = leaf;
            continue;
        };
        let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
            .iter()
            .partition(|&&r| data.row(r)[split.feature] <= split.threshold);
        let left = nodes.len();
        nodes.push(placeholder());
        let right = nodes.len();
        nodes.push(placeholder());
        nodes[slot] = TreeNode::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        };
        stack.push((right, right_rows, depth + 1));
        stack.push((left, left_rows, depth + 1));
    }
    DecisionTree { dim, nodes }
}

fn placeholder<T: Scalar>() -> TreeNode<T> {
    TreeNode::Leaf {
        class: Label::NonFight,
        class_counts: [0, 0],
    }
}

/// Best midpoint threshold on one feature by weighted Gini decrease. `None`
/// when the feature is constant over the node.
fn best_split_on<T: Scalar>(
    data: &Dataset<T>,
    rows: &[usize],
    weights: &[T],
    feature: usize,
    totals: [T; 2],
) -> Option<SplitChoice<T>> {
    let mut sorted: Vec<(T, usize)> = rows.iter().map(|&r| (data.row(r)[feature], r)).collect();
    sorted.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(Ordering::Equal)
            .then(a.1.cmp(&b.1))
    });

    let total = totals[0] + totals[1];
    let parent = weighted_gini(totals);
    let mut left = [T::zero(); 2];
    let mut best: Option<SplitChoice<T>> = None;
    for i in 0..sorted.len() - 1 {
        let (v, r) = sorted[i];
        let c = data.label(r).index();
        left[c] = left[c] + weights[r];
        let next = sorted[i + 1].0;
        if next <= v {
            continue;
        }
        let right = [totals[0] - left[0], totals[1] - left[1]];
        let wl = left[0] + left[1];
        let wr = right[0] + right[1];
        let children = if total > T::zero() {
            (wl * weighted_gini(left) + wr * weighted_gini(right)) / total
        } else {
            T::zero()
        };
        let decrease = parent - children;
        if best.as_ref().is_none_or(|b| decrease > b.decrease) {
            let mut threshold = (v + next) / T::of(2.0);
            // adjacent floats: keep `next` on the right
            if threshold >= next {
                threshold = v;
            }
            best = Some(SplitChoice {
                feature,
                threshold,
                decrease,
            });
        }
    }
    best
}
