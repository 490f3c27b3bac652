use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{evaluate_model, ClassMetrics, ConfusionMatrix, EvalError, EvaluationReport};
use crate::classifiers::{fit, ClassifierConfig, Dataset};
use crate::pose::Label;
use crate::Scalar;

/// Per-fold metric values averaged with equal fold weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanMetrics {
    pub accuracy: f64,
    /// Indexed by [`Label::index`]; `support` is the mean per-fold support
    /// rounded down.
    pub per_class: [ClassMetrics; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub k: usize,
    pub seed: u64,
    pub classifier: ClassifierConfig,
    /// Test fold of every row.
    pub fold_of: Vec<usize>,
    pub per_fold: Vec<EvaluationReport>,
    pub averaged: MeanMetrics,
    /// Sum of the per-fold confusion matrices.
    pub pooled: ConfusionMatrix,
}

/// Stratified fold assignment: each class is shuffled with a generator seeded
/// by `seed`, then rows are dealt round-robin into `k` folds, continuing the
/// deal from one class to the next. Per-class and total fold sizes each differ
/// by at most one.
pub fn stratified_folds(labels: &[Label], k: usize, seed: u64) -> Result<Vec<usize>, EvalError> {
    if k < 2 {
        return Err(EvalError::ContractViolation("k must be at least 2".into()));
    }
    if labels.len() < k {
        return Err(EvalError::ContractViolation(format!(
            "{} rows cannot fill {k} folds",
            labels.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold_of = vec![0; labels.len()];
    let mut dealt = 0;
    for class in Label::ALL {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        idx.shuffle(&mut rng);
        for i in idx {
            fold_of[i] = dealt % k;
            dealt += 1;
        }
    }
    Ok(fold_of)
}

/// Stratified k-fold cross-validation of one classifier configuration.
pub fn kfold_cv<T: Scalar>(
    data: &Dataset<T>,
    k: usize,
    classifier: &ClassifierConfig,
    seed: u64,
) -> Result<CvReport, EvalError> {
    let counts = data.class_counts();
    if counts[0] == 0 || counts[1] == 0 {
        return Err(EvalError::Stratification(
            "both classes must be present".into(),
        ));
    }
    let fold_of = stratified_folds(data.labels(), k, seed)?;

    let mut per_fold = Vec::with_capacity(k);
    for fold in 0..k {
        let (test, train): (Vec<usize>, Vec<usize>) =
            (0..data.len()).partition(|&i| fold_of[i] == fold);
        let train_set = data.subset(&train);
        let tc = train_set.class_counts();
        if tc[0] == 0 || tc[1] == 0 {
            return Err(EvalError::Stratification(format!(
                "training set of fold {fold} lacks a class"
            )));
        }
        let model = fit(classifier, &train_set)?;
        per_fold.push(evaluate_model(&model, &data.subset(&test))?);
    }

    let kf = k as f64;
    let mean_of = |f: &dyn Fn(&EvaluationReport) -> f64| per_fold.iter().map(f).sum::<f64>() / kf;
    let per_class = Label::ALL.map(|c| ClassMetrics {
        precision: mean_of(&|r| r.class(c).precision),
        recall: mean_of(&|r| r.class(c).recall),
        f1: mean_of(&|r| r.class(c).f1),
        support: per_fold.iter().map(|r| r.class(c).support).sum::<usize>() / k,
    });
    let averaged = MeanMetrics {
        accuracy: mean_of(&|r| r.accuracy),
        per_class,
    };
    let pooled = per_fold
        .iter()
        .fold(ConfusionMatrix::default(), |acc, r| acc + r.confusion);

    Ok(CvReport {
        k,
        seed,
        classifier: *classifier,
        fold_of,
        per_fold,
        averaged,
        pooled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n0: usize, n1: usize) -> Vec<Label> {
        [vec![Label::NonFight; n0], vec![Label::Fight; n1]].concat()
    }

    #[test]
    fn partition_sizes() {
        for (n0, n1) in [(5, 5), (6, 5), (500, 500), (7, 3)] {
            let l = labels(n0, n1);
            let f = stratified_folds(&l, 5, 11).unwrap();
            let mut total = [0usize; 5];
            let mut per = [[0usize; 5]; 2];
            for (i, &fold) in f.iter().enumerate() {
                total[fold] += 1;
                per[l[i].index()][fold] += 1;
            }
            let spread = |v: &[usize]| v.iter().max().unwrap() - v.iter().min().unwrap();
            assert!(spread(&total) <= 1);
            assert!(spread(&per[0]) <= 1 && spread(&per[1]) <= 1);
        }
    }

    #[test]
    fn seeded() {
        let l = labels(20, 20);
        assert_eq!(
            stratified_folds(&l, 5, 1).unwrap(),
            stratified_folds(&l, 5, 1).unwrap()
        );
        assert_ne!(
            stratified_folds(&l, 5, 1).unwrap(),
            stratified_folds(&l, 5, 2).unwrap()
        );
    }

    #[test]
    fn too_small() {
        assert!(stratified_folds(&labels(2, 1), 5, 0).is_err());
        let d = Dataset::new(vec![vec![0.0]; 6], labels(6, 0)).unwrap();
        assert!(matches!(
            kfold_cv(&d, 5, &ClassifierConfig::decision_tree(), 0),
            Err(EvalError::Stratification(_))
        ));
        // one Fight row: the fold that tests it trains without Fight
        let d = Dataset::new((0..6).map(|i| vec![i as f64]).collect(), labels(5, 1)).unwrap();
        assert!(matches!(
            kfold_cv(&d, 5, &ClassifierConfig::decision_tree(), 0),
            Err(EvalError::Stratification(_))
        ));
    }

    #[test]
    fn constant_features_follow_tie_rule() {
        // identical features for every row: any tree is one leaf with a
        // tied or NonFight-majority vote, so every prediction is NonFight
        let d = Dataset::new(vec![vec![1.0, 1.0]; 10], labels(5, 5)).unwrap();
        let r = kfold_cv(&d, 5, &ClassifierConfig::decision_tree(), 3).unwrap();
        for f in &r.per_fold {
            assert_eq!(f.confusion.tp + f.confusion.fp, 0);
            assert_eq!(f.accuracy, 0.5);
        }
        assert_eq!(r.averaged.accuracy, 0.5);
    }

    #[test]
    fn averaged_is_mean_of_folds() {
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|i| vec![(i % 9) as f64, (i % 4) as f64])
            .collect();
        let l: Vec<Label> = (0..40).map(|i| Label::from_index(i % 2).unwrap()).collect();
        let d = Dataset::new(rows, l).unwrap();
        let r = kfold_cv(&d, 5, &ClassifierConfig::knn(), 8).unwrap();
        let m: f64 = r.per_fold.iter().map(|f| f.accuracy).sum::<f64>() / 5.0;
        assert_eq!(r.averaged.accuracy, m);
        assert_eq!(r.pooled.total(), 40);
        let again = kfold_cv(&d, 5, &ClassifierConfig::knn(), 8).unwrap();
        assert_eq!(r, again);
    }
}
