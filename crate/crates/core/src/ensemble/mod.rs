//! Tree-ensemble learners: random forest, extra trees, gradient boosting
//! (plain, stochastic, second-order regularized, ordered/oblivious) and
//! AdaBoost, for both regression and binary classification.

mod adaboost;
mod boosting;
mod forest;
mod ordered;
mod second_order;

pub use adaboost::{
    fit_adaboost_classifier, fit_adaboost_regressor, AdaBoostClassifier, AdaBoostRegressor,
    AdaBoostStage,
};
pub use boosting::{
    fit_gradient_boosting_classifier, fit_gradient_boosting_regressor, GradientBoostingClassifier,
    GradientBoostingRegressor,
};
pub use forest::{
    fit_extra_trees_classifier, fit_extra_trees_regressor, fit_random_forest_classifier,
    fit_random_forest_regressor, RandomForest,
};
pub use ordered::{fit_ordered_boosting, ObliviousTree, OrderedBoostConfig, OrderedBoosting};
pub use second_order::{fit_second_order_boosting, SecondOrderBoosting};

use serde::{Deserialize, Serialize};

use crate::model::{Error, Result};
use crate::tree::Task;

/// Configuration for bagged tree ensembles (random forest, extra trees).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ForestConfig {
    pub n_trees: usize,
    pub max_depth: Option<usize>,
    pub min_samples_leaf: usize,
    /// Features sampled at every split; `None` applies the task default
    /// (⌈p/3⌉ for regression, ⌈√p⌉ for classification).
    pub feature_subset_size: Option<usize>,
    pub bootstrap: bool,
    pub seed: u64,
}

impl ForestConfig {
    /// Random-forest defaults: 100 bootstrapped trees of depth 6.
    pub fn random_forest(seed: u64) -> ForestConfig {
        ForestConfig {
            n_trees: 100,
            max_depth: Some(6),
            min_samples_leaf: 1,
            feature_subset_size: None,
            bootstrap: true,
            seed,
        }
    }

    /// Extra-trees defaults: as random forest but trained on the full
    /// sample per tree (no bootstrap).
    pub fn extra_trees(seed: u64) -> ForestConfig {
        ForestConfig {
            bootstrap: false,
            ..ForestConfig::random_forest(seed)
        }
    }

    pub(crate) fn resolve_subset(&self, n_features: usize, task: Task) -> Result<usize> {
        let k = self.feature_subset_size.unwrap_or(match task {
            Task::Regression => n_features.div_ceil(3),
            Task::Classification => (n_features as f64).sqrt().ceil() as usize,
        });
        if k == 0 || k > n_features {
            return Err(Error::InvalidParameter(format!(
                "feature_subset_size {k} outside 1..={n_features}"
            )));
        }
        Ok(k)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n_trees == 0 {
            return Err(Error::InvalidParameter("n_trees must be at least 1".into()));
        }
        if self.min_samples_leaf == 0 {
            return Err(Error::InvalidParameter(
                "min_samples_leaf must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Configuration for stagewise boosting learners.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BoostConfig {
    pub n_stages: usize,
    /// Shrinkage in (0, 1].
    pub learning_rate: f64,
    pub max_depth: Option<usize>,
    /// Row fraction fitted per stage; values below 1 select the
    /// stochastic variant (sampling without replacement).
    pub subsample_fraction: f64,
    /// L2 leaf-weight penalty (second-order variant only).
    pub lambda_l2: f64,
    /// Minimum split gain (second-order variant only).
    pub gamma: f64,
    pub seed: u64,
}

impl BoostConfig {
    /// Boosting defaults: 100 stages of depth-3 trees at learning rate 0.1.
    pub fn new(seed: u64) -> BoostConfig {
        BoostConfig {
            n_stages: 100,
            learning_rate: 0.1,
            max_depth: Some(3),
            subsample_fraction: 1.0,
            lambda_l2: 1.0,
            gamma: 0.0,
            seed,
        }
    }

    /// The stochastic variant: each stage fits half the rows.
    pub fn stochastic(seed: u64) -> BoostConfig {
        BoostConfig {
            subsample_fraction: 0.5,
            ..BoostConfig::new(seed)
        }
    }

    // The negated comparisons deliberately reject NaN along with
    // out-of-range values.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub(crate) fn validate(&self) -> Result<()> {
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
        if !(self.subsample_fraction > 0.0 && self.subsample_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "subsample_fraction must be in (0,1], got {}",
                self.subsample_fraction
            )));
        }
        if !(self.lambda_l2 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda_l2 must be nonnegative, got {}",
                self.lambda_l2
            )));
        }
        if !(self.gamma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be nonnegative, got {}",
                self.gamma
            )));
        }
        Ok(())
    }
}

pub(crate) fn mean_squared_error(y: &[f64], f: &[f64]) -> f64 {
    y.iter().zip(f).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / y.len() as f64
}
