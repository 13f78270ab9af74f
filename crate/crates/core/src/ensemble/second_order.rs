//! Second-order regularized boosting on squared loss. With per-sample
//! gradient g = F(x) - y and hessian h = 1, each stage grows a tree by
//! maximizing the regularized gain
//!
//!   ½·[G_L²/(H_L+λ) + G_R²/(H_R+λ) - G²/(H+λ)] - γ
//!
//! rejecting splits whose gain is not positive, and assigns each leaf the
//! weight -G/(H+λ). The λ and γ terms are the complexity penalty: λ
//! shrinks leaf weights, γ prices every additional leaf.
//!
//! Node records reuse the CART `TreeNode` shape; for these trees the
//! stored `impurity` is the mean squared gradient of the node and
//! `impurity_decrease` is the accepted gain divided by the node sample
//! count (so the shared importance rule n·decrease accumulates gain).

use serde::{Deserialize, Serialize};

use super::{mean_squared_error, BoostConfig};
use crate::model::{Error, Regressor, Result};
use crate::tree::{check_matrix, normalize_importance, DecisionTree, Task, TreeNode};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SecondOrderBoosting {
    pub f0: f64,
    pub learning_rate: f64,
    pub trees: Vec<DecisionTree>,
    /// Training MSE before any stage (index 0) and after each stage.
    pub train_mse_history: Vec<f64>,
    pub config: BoostConfig,
}

impl SecondOrderBoosting {
    pub fn feature_importance(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.trees.first().map_or(0, |t| t.n_features)];
        for tree in &self.trees {
            tree.accumulate_importance(&mut acc);
        }
        normalize_importance(acc)
    }
}

impl Regressor for SecondOrderBoosting {
    fn predict_one(&self, row: &[f64]) -> f64 {
        self.f0 + self.learning_rate * self.trees.iter().map(|t| t.predict_value(row)).sum::<f64>()
    }
}

pub fn fit_second_order_boosting(
    x: &[Vec<f64>],
    y: &[f64],
    config: &BoostConfig,
) -> Result<SecondOrderBoosting> {
    config.validate()?;
    let (n, p) = check_matrix(x)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} targets for {n} rows", y.len())));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("targets must be finite".into()));
    }

    let f0 = y.iter().sum::<f64>() / n as f64;
    let mut f = vec![f0; n];
    let mut history = vec![mean_squared_error(y, &f)];
    let mut trees = Vec::with_capacity(config.n_stages);
    let rows: Vec<usize> = (0..n).collect();

    for _ in 0..config.n_stages {
        // Squared loss ½(F-y)²: gradient F-y, hessian 1.
        let grad: Vec<f64> = f.iter().zip(y).map(|(fi, yi)| fi - yi).collect();
        let grower = GainGrower {
            x,
            grad: &grad,
            lambda: config.lambda_l2,
            gamma: config.gamma,
            max_depth: config.max_depth,
        };
        let root = grower.grow(&rows, 0);
        let tree = DecisionTree {
            root,
            task: Task::Regression,
            n_features: p,
        };
        for (fi, row) in f.iter_mut().zip(x) {
            *fi += config.learning_rate * tree.predict_value(row);
        }
        trees.push(tree);
        history.push(mean_squared_error(y, &f));
    }
    Ok(SecondOrderBoosting {
        f0,
        learning_rate: config.learning_rate,
        trees,
        train_mse_history: history,
        config: *config,
    })
}

struct GainGrower<'a> {
    x: &'a [Vec<f64>],
    grad: &'a [f64],
    lambda: f64,
    gamma: f64,
    max_depth: Option<usize>,
}

impl GainGrower<'_> {
    fn grow(&self, rows: &[usize], depth: usize) -> TreeNode {
        let g: f64 = rows.iter().map(|&i| self.grad[i]).sum();
        let h = rows.len() as f64;
        let leaf = || TreeNode::Leaf {
            value: -g / (h + self.lambda),
            n_samples: rows.len(),
            impurity: rows
                .iter()
                .map(|&i| self.grad[i] * self.grad[i])
                .sum::<f64>()
                / h,
        };

        if rows.len() < 2 || self.max_depth.is_some_and(|d| depth >= d) {
            return leaf();
        }
        let best = match self.best_split(rows, g, h) {
            Some(b) => b,
            None => return leaf(),
        };

        let (mut left_rows, mut right_rows) = (Vec::new(), Vec::new());
        for &i in rows {
            if self.x[i][best.feature] <= best.threshold {
                left_rows.push(i);
            } else {
                right_rows.push(i);
            }
        }
        let left = Box::new(self.grow(&left_rows, depth + 1));
        let right = Box::new(self.grow(&right_rows, depth + 1));
        TreeNode::Internal {
            feature_index: best.feature,
            threshold: best.threshold,
            n_samples: rows.len(),
            impurity: rows
                .iter()
                .map(|&i| self.grad[i] * self.grad[i])
                .sum::<f64>()
                / h,
            impurity_decrease: best.gain / h,
            left,
            right,
        }
    }

    fn best_split(&self, rows: &[usize], g: f64, h: f64) -> Option<BestSplit> {
        let p = self.x[0].len();
        let parent_score = g * g / (h + self.lambda);
        let mut best: Option<BestSplit> = None;
        for feature in 0..p {
            let mut vals: Vec<(f64, usize)> =
                rows.iter().map(|&i| (self.x[i][feature], i)).collect();
            vals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let (mut gl, mut hl) = (0.0, 0.0);
            for k in 0..vals.len() - 1 {
                let (v, i) = vals[k];
                gl += self.grad[i];
                hl += 1.0;
                let next = vals[k + 1].0;
                if next <= v {
                    continue;
                }
                let threshold = 0.5 * (v + next);
                if !(threshold >= v && threshold < next) {
                    continue;
                }
                let (gr, hr) = (g - gl, h - hl);
                let gain = 0.5
                    * (gl * gl / (hl + self.lambda) + gr * gr / (hr + self.lambda) - parent_score)
                    - self.gamma;
                if gain > 0.0 && best.as_ref().is_none_or(|b| gain > b.gain) {
                    best = Some(BestSplit {
                        gain,
                        feature,
                        threshold,
                    });
                }
            }
        }
        best
    }
}

struct BestSplit {
    gain: f64,
    feature: usize,
    threshold: f64,
}
