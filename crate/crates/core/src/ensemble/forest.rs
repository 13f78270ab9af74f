//! Random forest and extra trees: bagged CART ensembles with per-split
//! feature subsets. Extra trees differ by drawing one uniform-random
//! threshold per candidate feature instead of enumerating midpoints, and
//! by training on the full sample (no bootstrap) by default.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ForestConfig;
use crate::model::{validate_binary_labels, Classifier, Error, Regressor, Result};
use crate::rng;
use crate::tree::{
    check_matrix, fit_tree, normalize_importance, DecisionTree, GrowMode, Task, TreeParams,
};

/// A bagged ensemble of CART trees (covers both the bootstrap/midpoint
/// and full-sample/random-threshold variants).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RandomForest {
    pub trees: Vec<DecisionTree>,
    pub task: Task,
    pub config: ForestConfig,
}

impl RandomForest {
    /// Fraction of trees voting class 1 (classification forests).
    fn vote_fraction(&self, row: &[f64]) -> f64 {
        let votes = self
            .trees
            .iter()
            .filter(|t| t.predict_value(row) >= 0.5)
            .count();
        votes as f64 / self.trees.len() as f64
    }

    pub fn feature_importance(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.trees[0].n_features];
        for tree in &self.trees {
            tree.accumulate_importance(&mut acc);
        }
        normalize_importance(acc)
    }
}

impl Regressor for RandomForest {
    fn predict_one(&self, row: &[f64]) -> f64 {
        let sum: f64 = self.trees.iter().map(|t| t.predict_value(row)).sum();
        sum / self.trees.len() as f64
    }
}

impl Classifier for RandomForest {
    fn score_one(&self, row: &[f64]) -> f64 {
        self.vote_fraction(row)
    }

    fn label_one(&self, row: &[f64]) -> u8 {
        u8::from(self.vote_fraction(row) >= 0.5)
    }
}

pub fn fit_random_forest_regressor(
    x: &[Vec<f64>],
    y: &[f64],
    config: &ForestConfig,
) -> Result<RandomForest> {
    fit_forest(x, y, Task::Regression, config, false)
}

pub fn fit_random_forest_classifier(
    x: &[Vec<f64>],
    labels: &[u8],
    config: &ForestConfig,
) -> Result<RandomForest> {
    let y = validate_binary_labels(labels)?;
    fit_forest(x, &y, Task::Classification, config, false)
}

pub fn fit_extra_trees_regressor(
    x: &[Vec<f64>],
    y: &[f64],
    config: &ForestConfig,
) -> Result<RandomForest> {
    fit_forest(x, y, Task::Regression, config, true)
}

pub fn fit_extra_trees_classifier(
    x: &[Vec<f64>],
    labels: &[u8],
    config: &ForestConfig,
) -> Result<RandomForest> {
    let y = validate_binary_labels(labels)?;
    fit_forest(x, &y, Task::Classification, config, true)
}

fn fit_forest(
    x: &[Vec<f64>],
    y: &[f64],
    task: Task,
    config: &ForestConfig,
    random_thresholds: bool,
) -> Result<RandomForest> {
    config.validate()?;
    let (n, p) = check_matrix(x)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} targets for {n} rows", y.len())));
    }
    let subset = config.resolve_subset(p, task)?;
    let params = TreeParams {
        max_depth: config.max_depth,
        min_samples_leaf: config.min_samples_leaf,
    };
    let mode = GrowMode {
        feature_subset: Some(subset),
        random_thresholds,
    };
    let purpose = if random_thresholds {
        "extra-trees-tree"
    } else {
        "random-forest-tree"
    };

    let mut trees = Vec::with_capacity(config.n_trees);
    for t in 0..config.n_trees {
        let mut stream = rng::stream(config.seed, purpose, t as u64);
        let (xt, yt): (Vec<Vec<f64>>, Vec<f64>) = if config.bootstrap {
            let rows: Vec<usize> = (0..n).map(|_| stream.gen_range(0..n)).collect();
            (
                rows.iter().map(|&i| x[i].clone()).collect(),
                rows.iter().map(|&i| y[i]).collect(),
            )
        } else {
            (x.to_vec(), y.to_vec())
        };
        trees.push(fit_tree(
            &xt,
            &yt,
            None,
            task,
            &params,
            &mode,
            Some(stream),
        )?);
    }
    Ok(RandomForest {
        trees,
        task,
        config: *config,
    })
}
