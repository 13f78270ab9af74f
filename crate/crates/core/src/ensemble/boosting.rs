//! Gradient boosting with leaf-mean CART trees on squared loss. Each
//! stage fits a tree to the current residuals and shrinks it by the
//! learning rate; a subsample fraction below 1 fits every stage on a
//! fresh without-replacement row sample (the stochastic variant).
//!
//! With full subsampling the training MSE is nonincreasing stage over
//! stage: each leaf applies the correction lr·v to rows whose mean
//! residual is v, changing that leaf's squared-error sum by
//! -n·v²·lr·(2-lr) ≤ 0 for lr in (0,1].

use serde::{Deserialize, Serialize};

use super::{mean_squared_error, BoostConfig};
use crate::model::{validate_binary_labels, Classifier, Error, Regressor, Result};
use crate::rng;
use crate::tree::{
    check_matrix, fit_tree, normalize_importance, DecisionTree, GrowMode, Task, TreeParams,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradientBoostingRegressor {
    pub f0: f64,
    pub learning_rate: f64,
    pub trees: Vec<DecisionTree>,
    /// Training MSE before any stage (index 0) and after each stage.
    pub train_mse_history: Vec<f64>,
    pub config: BoostConfig,
}

impl GradientBoostingRegressor {
    pub fn feature_importance(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.trees.first().map_or(0, |t| t.n_features)];
        for tree in &self.trees {
            tree.accumulate_importance(&mut acc);
        }
        normalize_importance(acc)
    }
}

impl Regressor for GradientBoostingRegressor {
    fn predict_one(&self, row: &[f64]) -> f64 {
        self.f0 + self.learning_rate * self.trees.iter().map(|t| t.predict_value(row)).sum::<f64>()
    }
}

/// Fit gradient-boosted trees on squared loss: F_0 = mean(y), then each
/// stage adds lr·tree fitted to the residuals y - F.
pub fn fit_gradient_boosting_regressor(
    x: &[Vec<f64>],
    y: &[f64],
    config: &BoostConfig,
) -> Result<GradientBoostingRegressor> {
    config.validate()?;
    let (n, _) = check_matrix(x)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} targets for {n} rows", y.len())));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("targets must be finite".into()));
    }

    let f0 = y.iter().sum::<f64>() / n as f64;
    let mut f = vec![f0; n];
    let mut history = vec![mean_squared_error(y, &f)];
    let params = TreeParams {
        max_depth: config.max_depth,
        min_samples_leaf: 1,
    };
    let mut trees = Vec::with_capacity(config.n_stages);

    for stage in 0..config.n_stages {
        let residuals: Vec<f64> = y.iter().zip(&f).map(|(t, p)| t - p).collect();
        let tree = if config.subsample_fraction < 1.0 {
            let k = ((config.subsample_fraction * n as f64).round() as usize).clamp(1, n);
            let mut stream = rng::stream(config.seed, "gradient-boost-subsample", stage as u64);
            let mut rows = rand::seq::index::sample(&mut stream, n, k).into_vec();
            rows.sort_unstable();
            let xs: Vec<Vec<f64>> = rows.iter().map(|&i| x[i].clone()).collect();
            let rs: Vec<f64> = rows.iter().map(|&i| residuals[i]).collect();
            fit_tree(
                &xs,
                &rs,
                None,
                Task::Regression,
                &params,
                &GrowMode::exhaustive(),
                None,
            )?
        } else {
            fit_tree(
                x,
                &residuals,
                None,
                Task::Regression,
                &params,
                &GrowMode::exhaustive(),
                None,
            )?
        };
        for (fi, row) in f.iter_mut().zip(x) {
            *fi += config.learning_rate * tree.predict_value(row);
        }
        trees.push(tree);
        history.push(mean_squared_error(y, &f));
    }
    Ok(GradientBoostingRegressor {
        f0,
        learning_rate: config.learning_rate,
        trees,
        train_mse_history: history,
        config: *config,
    })
}

/// Gradient boosting adapted to binary labels by least-squares fitting on
/// 0/1 targets: the additive score F(x) ranks class-1 confidence and the
/// label rule is F(x) ≥ 0.5.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradientBoostingClassifier {
    pub inner: GradientBoostingRegressor,
}

impl GradientBoostingClassifier {
    pub fn feature_importance(&self) -> Vec<f64> {
        self.inner.feature_importance()
    }
}

impl Classifier for GradientBoostingClassifier {
    fn score_one(&self, row: &[f64]) -> f64 {
        self.inner.predict_one(row)
    }

    fn label_one(&self, row: &[f64]) -> u8 {
        u8::from(self.inner.predict_one(row) >= 0.5)
    }
}

pub fn fit_gradient_boosting_classifier(
    x: &[Vec<f64>],
    labels: &[u8],
    config: &BoostConfig,
) -> Result<GradientBoostingClassifier> {
    let y = validate_binary_labels(labels)?;
    Ok(GradientBoostingClassifier {
        inner: fit_gradient_boosting_regressor(x, &y, config)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn wavy_data(n: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<f64>) {
        let mut rng = crate::rng::stream(seed, "test-boost-data", 0);
        let x: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen_range(0.0..6.0)]).collect();
        let y: Vec<f64> = x.iter().map(|r| r[0].sin() * 3.0 + 0.5 * r[0]).collect();
        (x, y)
    }

    #[test]
    fn zero_learning_rate_rejected() {
        let (x, y) = wavy_data(10, 1);
        let config = BoostConfig {
            learning_rate: 0.0,
            ..BoostConfig::new(1)
        };
        assert!(fit_gradient_boosting_regressor(&x, &y, &config).is_err());
    }

    #[test]
    fn single_full_stage_memorizes_distinct_inputs() {
        let x: Vec<Vec<f64>> = [1.0, 2.0, 3.0, 4.0].iter().map(|&v| vec![v]).collect();
        let y = vec![3.0, -1.0, 4.0, 8.0];
        let config = BoostConfig {
            n_stages: 1,
            learning_rate: 1.0,
            max_depth: None,
            ..BoostConfig::new(0)
        };
        let model = fit_gradient_boosting_regressor(&x, &y, &config).unwrap();
        assert!(model.train_mse_history[1] < 1e-24);
        for (row, &target) in x.iter().zip(&y) {
            assert!((model.predict_one(row) - target).abs() < 1e-12);
        }
    }

    #[test]
    fn training_mse_history_is_nonincreasing() {
        for seed in [2, 5, 11] {
            let (x, y) = wavy_data(40, seed);
            for lr in [0.1, 0.5, 1.0] {
                let config = BoostConfig {
                    n_stages: 60,
                    learning_rate: lr,
                    ..BoostConfig::new(seed)
                };
                let model = fit_gradient_boosting_regressor(&x, &y, &config).unwrap();
                assert_eq!(model.train_mse_history.len(), 61);
                for w in model.train_mse_history.windows(2) {
                    assert!(
                        w[1] <= w[0] + 1e-12,
                        "MSE rose from {} to {} at lr {lr}",
                        w[0],
                        w[1]
                    );
                }
            }
        }
    }

    #[test]
    fn stochastic_variant_is_deterministic_and_distinct() {
        let (x, y) = wavy_data(30, 3);
        let config = BoostConfig {
            n_stages: 25,
            ..BoostConfig::stochastic(3)
        };
        let a = fit_gradient_boosting_regressor(&x, &y, &config).unwrap();
        let b = fit_gradient_boosting_regressor(&x, &y, &config).unwrap();
        assert_eq!(a.train_mse_history, b.train_mse_history);

        let full = fit_gradient_boosting_regressor(
            &x,
            &y,
            &BoostConfig {
                n_stages: 25,
                ..BoostConfig::new(3)
            },
        )
        .unwrap();
        assert_ne!(a.train_mse_history, full.train_mse_history);
    }

    #[test]
    fn classifier_scores_separate_classes() {
        let x: Vec<Vec<f64>> = [0.0, 1.0, 2.0, 10.0, 11.0, 12.0]
            .iter()
            .map(|&v| vec![v])
            .collect();
        let labels = vec![0u8, 0, 0, 1, 1, 1];
        let config = BoostConfig {
            n_stages: 30,
            ..BoostConfig::new(4)
        };
        let model = fit_gradient_boosting_classifier(&x, &labels, &config).unwrap();
        assert_eq!(model.labels(&x), labels);
        assert!(model.score_one(&[11.0]) > model.score_one(&[1.0]));
    }
}
