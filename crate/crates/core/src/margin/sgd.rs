//! Stochastic-gradient-descent classification: logistic loss minimized
//! one sample at a time, visiting samples in a freshly shuffled order
//! each epoch.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::logistic::sigmoid;
use crate::model::{validate_binary_labels, Classifier, Error, Result};
use crate::rng;
use crate::tree::check_matrix;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SgdClassifier {
    pub coefficients: Vec<f64>,
    pub intercept: f64,
    /// Mean NLL over the training set after each epoch.
    pub loss_history: Vec<f64>,
    pub learning_rate: f64,
    pub n_epochs: usize,
    pub seed: u64,
}

impl SgdClassifier {
    pub fn probability(&self, row: &[f64]) -> f64 {
        let z = self.intercept
            + self
                .coefficients
                .iter()
                .zip(row)
                .map(|(c, x)| c * x)
                .sum::<f64>();
        sigmoid(z)
    }
}

impl Classifier for SgdClassifier {
    fn score_one(&self, row: &[f64]) -> f64 {
        self.probability(row)
    }

    fn label_one(&self, row: &[f64]) -> u8 {
        u8::from(self.probability(row) >= 0.5)
    }
}

/// Per-sample update θ ← θ − α(σ(θ·x) − y)x over `n_epochs` shuffled
/// passes; the shuffle order is drawn from the stream
/// (seed, "sgd-epoch", epoch) so training is reproducible.
pub fn fit_sgd_classifier(
    x: &[Vec<f64>],
    labels: &[u8],
    learning_rate: f64,
    n_epochs: usize,
    seed: u64,
) -> Result<SgdClassifier> {
    if !(learning_rate.is_finite() && learning_rate > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "learning_rate must be positive, got {learning_rate}"
        )));
    }
    let (n, p) = check_matrix(x)?;
    let y = validate_binary_labels(labels)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} labels for {n} rows", y.len())));
    }

    let mut coef = vec![0.0; p];
    let mut intercept = 0.0;
    let mut history = Vec::with_capacity(n_epochs);
    for epoch in 0..n_epochs {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng::stream(seed, "sgd-epoch", epoch as u64));
        for &i in &order {
            let z = intercept + coef.iter().zip(&x[i]).map(|(c, v)| c * v).sum::<f64>();
            let residual = sigmoid(z) - y[i];
            for (c, v) in coef.iter_mut().zip(&x[i]) {
                *c -= learning_rate * residual * v;
            }
            intercept -= learning_rate * residual;
        }
        let loss: f64 = x
            .iter()
            .zip(&y)
            .map(|(row, &yi)| {
                let z = intercept + coef.iter().zip(row).map(|(c, v)| c * v).sum::<f64>();
                let softplus = if z > 0.0 {
                    z + (-z).exp().ln_1p()
                } else {
                    z.exp().ln_1p()
                };
                softplus - yi * z
            })
            .sum::<f64>()
            / n as f64;
        history.push(loss);
    }
    if !(intercept.is_finite() && coef.iter().all(|c| c.is_finite())) {
        return Err(Error::Diverged("sgd coefficients are not finite".into()));
    }
    Ok(SgdClassifier {
        coefficients: coef,
        intercept,
        loss_history: history,
        learning_rate,
        n_epochs,
        seed,
    })
}
