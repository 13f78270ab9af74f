//! Adaptive boosting: the discrete two-class form (exponential loss,
//! stage weight ½ln((1−err)/err), multiplicative sample reweighting) and
//! its regression extension with linear loss, where each stage's weight
//! comes from its normalized weighted error and prediction is the
//! weighted median of the stage predictions.
//!
//! Both variants stop early when a stage's weighted error reaches 0.5;
//! a stage with zero weighted error decides alone and training stops.

use serde::{Deserialize, Serialize};

use crate::model::{validate_binary_labels, Classifier, Error, Regressor, Result};
use crate::tree::{
    check_matrix, fit_tree, normalize_importance, DecisionTree, GrowMode, Task, TreeParams,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdaBoostStage {
    pub weight: f64,
    pub tree: DecisionTree,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdaBoostClassifier {
    pub stages: Vec<AdaBoostStage>,
    /// Weighted error of each fitted stage, in training order (may be
    /// longer than `stages` when the final stage triggered early stop).
    pub stage_errors: Vec<f64>,
}

impl Classifier for AdaBoostClassifier {
    /// Weighted vote sum with each stump voting −1 or +1.
    fn score_one(&self, row: &[f64]) -> f64 {
        self.stages
            .iter()
            .map(|s| s.weight * (2.0 * f64::from(s.tree.label_one(row)) - 1.0))
            .sum()
    }

    fn label_one(&self, row: &[f64]) -> u8 {
        u8::from(self.score_one(row) >= 0.0)
    }
}

impl AdaBoostClassifier {
    pub fn feature_importance(&self) -> Vec<f64> {
        importance_over_stages(&self.stages)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdaBoostRegressor {
    pub stages: Vec<AdaBoostStage>,
    pub stage_errors: Vec<f64>,
}

impl Regressor for AdaBoostRegressor {
    /// Weighted median of the stage predictions: the smallest prediction
    /// whose cumulative stage weight reaches half the total. With all
    /// stage weights zero the first stage decides.
    fn predict_one(&self, row: &[f64]) -> f64 {
        if self.stages.is_empty() {
            return 0.0;
        }
        let mut preds: Vec<(f64, f64)> = self
            .stages
            .iter()
            .map(|s| (s.tree.predict_value(row), s.weight))
            .collect();
        preds.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = preds.iter().map(|(_, w)| w).sum();
        if total <= 0.0 {
            return self.stages[0].tree.predict_value(row);
        }
        let mut cum = 0.0;
        for (p, w) in &preds {
            cum += w;
            if cum >= 0.5 * total {
                return *p;
            }
        }
        preds.last().unwrap().0
    }
}

impl AdaBoostRegressor {
    pub fn feature_importance(&self) -> Vec<f64> {
        importance_over_stages(&self.stages)
    }
}

fn importance_over_stages(stages: &[AdaBoostStage]) -> Vec<f64> {
    let Some(first) = stages.first() else {
        return Vec::new();
    };
    let mut acc = vec![0.0; first.tree.n_features];
    for stage in stages {
        stage.tree.accumulate_importance(&mut acc);
    }
    normalize_importance(acc)
}

fn validate_stages(n_stages: usize) -> Result<()> {
    if n_stages == 0 {
        return Err(Error::InvalidParameter(
            "n_stages must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Discrete two-class boosting over depth-limited trees (stumps by
/// default at `base_depth = 1`).
pub fn fit_adaboost_classifier(
    x: &[Vec<f64>],
    labels: &[u8],
    n_stages: usize,
    base_depth: usize,
) -> Result<AdaBoostClassifier> {
    validate_stages(n_stages)?;
    let (n, _) = check_matrix(x)?;
    let y = validate_binary_labels(labels)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} labels for {n} rows", y.len())));
    }
    let params = TreeParams {
        max_depth: Some(base_depth),
        min_samples_leaf: 1,
    };

    let mut w = vec![1.0 / n as f64; n];
    let mut stages: Vec<AdaBoostStage> = Vec::new();
    let mut stage_errors = Vec::new();
    for _ in 0..n_stages {
        let tree = fit_tree(
            x,
            &y,
            Some(&w),
            Task::Classification,
            &params,
            &GrowMode::exhaustive(),
            None,
        )?;
        let predicted: Vec<u8> = x.iter().map(|row| tree.label_one(row)).collect();
        let err: f64 = w
            .iter()
            .zip(&predicted)
            .zip(labels)
            .filter(|((_, p), l)| p != l)
            .map(|((wi, _), _)| wi)
            .sum();
        stage_errors.push(err);

        if err <= 0.0 {
            stages = vec![AdaBoostStage { weight: 1.0, tree }];
            break;
        }
        if err >= 0.5 {
            if stages.is_empty() {
                let alpha = 0.5 * ((1.0 - err) / err).ln();
                stages.push(AdaBoostStage {
                    weight: alpha.max(0.0),
                    tree,
                });
            }
            break;
        }

        let alpha = 0.5 * ((1.0 - err) / err).ln();
        for i in 0..n {
            let agree = predicted[i] == labels[i];
            w[i] *= if agree { (-alpha).exp() } else { alpha.exp() };
        }
        let total: f64 = w.iter().sum();
        for wi in &mut w {
            *wi /= total;
        }
        debug_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        stages.push(AdaBoostStage {
            weight: alpha,
            tree,
        });
    }
    Ok(AdaBoostClassifier {
        stages,
        stage_errors,
    })
}

/// Linear-loss regression boosting: per-stage losses are absolute errors
/// scaled by the stage's worst error, β = err/(1−err) drives both the
/// reweighting w_i ← w_i·β^{1−L_i} and the stage weight ln(1/β).
pub fn fit_adaboost_regressor(
    x: &[Vec<f64>],
    y: &[f64],
    n_stages: usize,
    base_depth: usize,
) -> Result<AdaBoostRegressor> {
    validate_stages(n_stages)?;
    let (n, _) = check_matrix(x)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} targets for {n} rows", y.len())));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("targets must be finite".into()));
    }
    let params = TreeParams {
        max_depth: Some(base_depth),
        min_samples_leaf: 1,
    };

    let mut w = vec![1.0 / n as f64; n];
    let mut stages: Vec<AdaBoostStage> = Vec::new();
    let mut stage_errors = Vec::new();
    for _ in 0..n_stages {
        let tree = fit_tree(
            x,
            y,
            Some(&w),
            Task::Regression,
            &params,
            &GrowMode::exhaustive(),
            None,
        )?;
        let abs_err: Vec<f64> = x
            .iter()
            .zip(y)
            .map(|(row, &yi)| (tree.predict_value(row) - yi).abs())
            .collect();
        let worst = abs_err.iter().copied().fold(0.0, f64::max);
        if worst <= 0.0 {
            stage_errors.push(0.0);
            stages = vec![AdaBoostStage { weight: 1.0, tree }];
            break;
        }
        let loss: Vec<f64> = abs_err.iter().map(|e| e / worst).collect();
        let err: f64 = w.iter().zip(&loss).map(|(wi, li)| wi * li).sum();
        stage_errors.push(err);

        if err <= 0.0 {
            stages = vec![AdaBoostStage { weight: 1.0, tree }];
            break;
        }
        if err >= 0.5 {
            if stages.is_empty() {
                let beta = err / (1.0 - err);
                stages.push(AdaBoostStage {
                    weight: (1.0 / beta).ln().max(0.0),
                    tree,
                });
            }
            break;
        }

        let beta = err / (1.0 - err);
        for i in 0..n {
            w[i] *= beta.powf(1.0 - loss[i]);
        }
        let total: f64 = w.iter().sum();
        for wi in &mut w {
            *wi /= total;
        }
        debug_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        stages.push(AdaBoostStage {
            weight: (1.0 / beta).ln(),
            tree,
        });
    }
    Ok(AdaBoostRegressor {
        stages,
        stage_errors,
    })
}
