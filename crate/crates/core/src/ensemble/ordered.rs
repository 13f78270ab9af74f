//! Ordered boosting over oblivious trees.
//!
//! Oblivious trees use one (feature, threshold) pair per depth level, so a
//! depth-d tree has 2^d leaves indexed by the d split outcomes. The
//! ordered-boosting rule keeps one running prediction vector per random
//! permutation; within a stage, the correction applied to sample i under
//! permutation σ is the mean residual of the samples in the same leaf
//! that appear strictly earlier in σ (0 when that prefix is empty) — so
//! no sample's own residual ever feeds its running prediction estimate.
//!
//! Each stage's tree structure is selected on those ordered residual
//! estimates (averaged over permutations), which is where the
//! target-leakage protection matters. The stored tree's leaf corrections
//! are then the full-data residual means of the final model itself, so
//! the exported model is a leaf-mean boost over ordered-chosen structures
//! and its training MSE is nonincreasing stage over stage.
//!
//! This is a deliberately small committed interpretation of the
//! categorical-boosting scheme, not a reimplementation of any external
//! tool; tests target its structural invariants.

use serde::{Deserialize, Serialize};

use super::mean_squared_error;
use crate::model::{Error, Regressor, Result};
use crate::rng;
use crate::tree::check_matrix;

/// A decision tree constrained to one (feature, threshold) per level.
/// Routing at each level shifts a 0 (value ≤ threshold) or 1 bit into the
/// leaf index.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObliviousTree {
    pub levels: Vec<(usize, f64)>,
    /// Squared-error reduction achieved by each level on the residuals it
    /// was grown on (feeds feature importance).
    pub level_gains: Vec<f64>,
    pub leaf_values: Vec<f64>,
}

impl ObliviousTree {
    pub fn leaf_index(&self, row: &[f64]) -> usize {
        self.levels
            .iter()
            .fold(0, |idx, &(f, t)| (idx << 1) | usize::from(row[f] > t))
    }

    pub fn predict(&self, row: &[f64]) -> f64 {
        self.leaf_values[self.leaf_index(row)]
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OrderedBoostConfig {
    pub n_stages: usize,
    pub learning_rate: f64,
    /// Levels per oblivious tree.
    pub max_depth: usize,
    /// Number of sample permutations maintained for the ordered rule.
    pub n_permutations: usize,
    pub seed: u64,
}

impl OrderedBoostConfig {
    /// Defaults: 100 stages of depth-4 oblivious trees over 4 permutations.
    pub fn new(seed: u64) -> OrderedBoostConfig {
        OrderedBoostConfig {
            n_stages: 100,
            learning_rate: 0.1,
            max_depth: 4,
            n_permutations: 4,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_stages == 0 {
            return Err(Error::InvalidParameter(
                "n_stages must be at least 1".into(),
            ));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "learning_rate must be in (0,1], got {}",
                self.learning_rate
            )));
        }
        if self.n_permutations == 0 {
            return Err(Error::InvalidParameter(
                "n_permutations must be at least 1".into(),
            ));
        }
        if self.max_depth == 0 {
            return Err(Error::InvalidParameter(
                "max_depth must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderedBoosting {
    pub f0: f64,
    pub learning_rate: f64,
    pub trees: Vec<ObliviousTree>,
    pub n_features: usize,
    /// Training MSE of the final model before any stage and after each.
    pub train_mse_history: Vec<f64>,
    pub config: OrderedBoostConfig,
}

impl Regressor for OrderedBoosting {
    fn predict_one(&self, row: &[f64]) -> f64 {
        self.f0 + self.learning_rate * self.trees.iter().map(|t| t.predict(row)).sum::<f64>()
    }
}

impl OrderedBoosting {
    pub fn feature_importance(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.n_features];
        for tree in &self.trees {
            for (&(feature, _), &gain) in tree.levels.iter().zip(&tree.level_gains) {
                acc[feature] += gain;
            }
        }
        crate::tree::normalize_importance(acc)
    }
}

pub fn fit_ordered_boosting(
    x: &[Vec<f64>],
    y: &[f64],
    config: &OrderedBoostConfig,
) -> Result<OrderedBoosting> {
    let (n, _) = check_matrix(x)?;
    let perms: Vec<Vec<usize>> = (0..config.n_permutations)
        .map(|p| {
            let mut order: Vec<usize> = (0..n).collect();
            use rand::seq::SliceRandom;
            order.shuffle(&mut rng::stream(
                config.seed,
                "ordered-boost-permutation",
                p as u64,
            ));
            order
        })
        .collect();
    fit_with_permutations(x, y, config, perms).map(|(model, _)| model)
}

/// Fit with explicit permutations; returns the per-permutation running
/// predictions alongside the model (used to test the ordered rule).
pub(crate) fn fit_with_permutations(
    x: &[Vec<f64>],
    y: &[f64],
    config: &OrderedBoostConfig,
    perms: Vec<Vec<usize>>,
) -> Result<(OrderedBoosting, Vec<Vec<f64>>)> {
    config.validate()?;
    let (n, p) = check_matrix(x)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} targets for {n} rows", y.len())));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("targets must be finite".into()));
    }

    // Candidate thresholds per feature: global midpoints between
    // consecutive sorted distinct values (every level splits all rows).
    let candidates: Vec<Vec<f64>> = (0..p)
        .map(|f| {
            let mut vals: Vec<f64> = x.iter().map(|row| row[f]).collect();
            vals.sort_by(f64::total_cmp);
            vals.windows(2)
                .filter(|w| w[1] > w[0])
                .map(|w| 0.5 * (w[0] + w[1]))
                .filter(|&t| vals.iter().any(|&v| v <= t) && vals.iter().any(|&v| v > t))
                .collect()
        })
        .collect();

    let f0 = y.iter().sum::<f64>() / n as f64;
    let n_perms = perms.len();
    let mut f_perm = vec![vec![f0; n]; n_perms];
    let mut f_final = vec![f0; n];
    let mut history = vec![mean_squared_error(y, &f_final)];
    let mut trees = Vec::with_capacity(config.n_stages);

    for _ in 0..config.n_stages {
        let avg_residual: Vec<f64> = (0..n)
            .map(|i| {
                let s: f64 = f_perm.iter().map(|fp| y[i] - fp[i]).sum();
                s / n_perms as f64
            })
            .collect();

        // Grow the shared level structure greedily on the averaged
        // residuals: each level applies one (feature, threshold) to every
        // current leaf at once.
        let mut levels: Vec<(usize, f64)> = Vec::new();
        let mut level_gains: Vec<f64> = Vec::new();
        let mut leaf_of: Vec<usize> = vec![0; n];
        for _ in 0..config.max_depth {
            let n_leaves = 1usize << levels.len();
            let mut parent = vec![(0.0, 0.0); n_leaves]; // (sum w, sum r)
            for i in 0..n {
                parent[leaf_of[i]].0 += 1.0;
                parent[leaf_of[i]].1 += avg_residual[i];
            }
            let h_parent: f64 = parent
                .iter()
                .filter(|(c, _)| *c > 0.0)
                .map(|(c, s)| s * s / c)
                .sum();

            let mut best: Option<(f64, usize, f64)> = None; // (h, feature, thr)
            for (feature, thrs) in candidates.iter().enumerate() {
                for &threshold in thrs {
                    let mut child = vec![(0.0, 0.0); n_leaves * 2];
                    for i in 0..n {
                        let c = (leaf_of[i] << 1) | usize::from(x[i][feature] > threshold);
                        child[c].0 += 1.0;
                        child[c].1 += avg_residual[i];
                    }
                    let h: f64 = child
                        .iter()
                        .filter(|(c, _)| *c > 0.0)
                        .map(|(c, s)| s * s / c)
                        .sum();
                    if h > best.as_ref().map_or(h_parent, |b| b.0) {
                        best = Some((h, feature, threshold));
                    }
                }
            }
            match best {
                Some((h, feature, threshold)) => {
                    for i in 0..n {
                        leaf_of[i] = (leaf_of[i] << 1) | usize::from(x[i][feature] > threshold);
                    }
                    levels.push((feature, threshold));
                    level_gains.push(h - h_parent);
                }
                None => break,
            }
        }

        let n_leaves = 1usize << levels.len();

        // Ordered updates: each permutation's running prediction moves by
        // the mean residual of strictly-earlier same-leaf samples.
        for (f_p, perm) in f_perm.iter_mut().zip(&perms) {
            let residual: Vec<f64> = (0..n).map(|i| y[i] - f_p[i]).collect();
            let mut count = vec![0.0f64; n_leaves];
            let mut sum = vec![0.0f64; n_leaves];
            let mut delta = vec![0.0f64; n];
            for &i in perm {
                let l = leaf_of[i];
                if count[l] > 0.0 {
                    delta[i] = sum[l] / count[l];
                }
                count[l] += 1.0;
                sum[l] += residual[i];
            }
            for i in 0..n {
                f_p[i] += config.learning_rate * delta[i];
            }
        }

        // Stored tree: leaf values are full-data residual means of the
        // final model (empty leaves predict 0), so the exported trajectory
        // cannot regress even where the ordered estimates lag.
        let mut count = vec![0.0f64; n_leaves];
        let mut sum = vec![0.0f64; n_leaves];
        for i in 0..n {
            count[leaf_of[i]] += 1.0;
            sum[leaf_of[i]] += y[i] - f_final[i];
        }
        let leaf_values: Vec<f64> = count
            .iter()
            .zip(&sum)
            .map(|(&c, &s)| if c > 0.0 { s / c } else { 0.0 })
            .collect();
        let tree = ObliviousTree {
            levels,
            level_gains,
            leaf_values,
        };
        for i in 0..n {
            f_final[i] += config.learning_rate * tree.leaf_values[leaf_of[i]];
        }
        history.push(mean_squared_error(y, &f_final));
        trees.push(tree);
    }

    let model = OrderedBoosting {
        f0,
        learning_rate: config.learning_rate,
        trees,
        n_features: p,
        train_mse_history: history,
        config: *config,
    };
    Ok((model, f_perm))
}
