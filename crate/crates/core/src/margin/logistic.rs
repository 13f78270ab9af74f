//! Logistic regression trained by full-batch gradient descent on the
//! mean negative log-likelihood, with optional L2 penalty on the
//! coefficients (never the intercept).

use serde::{Deserialize, Serialize};

use crate::model::{validate_binary_labels, Classifier, Error, Result};
use crate::tree::check_matrix;

/// Numerically stable σ(z): both branches keep the exponential argument
/// nonpositive, so no overflow occurs for any finite z.
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LogisticConfig {
    pub learning_rate: f64,
    pub n_epochs: usize,
    /// L2 penalty strength on the coefficients.
    pub l2: f64,
    /// Probability at or above which class 1 is predicted.
    pub threshold: f64,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        LogisticConfig {
            learning_rate: 0.1,
            n_epochs: 500,
            l2: 0.0,
            threshold: 0.5,
        }
    }
}

impl LogisticConfig {
    fn validate(&self) -> Result<()> {
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(self.l2.is_finite() && self.l2 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "l2 must be nonnegative, got {}",
                self.l2
            )));
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(Error::InvalidParameter(format!(
                "threshold must be in [0,1], got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LogisticModel {
    pub coefficients: Vec<f64>,
    pub intercept: f64,
    pub threshold: f64,
    /// Mean NLL before training (index 0) and after each epoch.
    pub loss_history: Vec<f64>,
    pub config: LogisticConfig,
}

impl LogisticModel {
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

impl Classifier for LogisticModel {
    fn score_one(&self, row: &[f64]) -> f64 {
        self.probability(row)
    }

    fn label_one(&self, row: &[f64]) -> u8 {
        u8::from(self.probability(row) >= self.threshold)
    }
}

fn mean_nll(x: &[Vec<f64>], y: &[f64], coef: &[f64], intercept: f64, l2: f64) -> f64 {
    let n = x.len() as f64;
    let nll: f64 = x
        .iter()
        .zip(y)
        .map(|(row, &yi)| {
            let z = intercept + coef.iter().zip(row).map(|(c, v)| c * v).sum::<f64>();
            // -[y ln p + (1-y) ln(1-p)] in the log-sum-exp form that never
            // takes ln of a rounded-to-zero probability.
            let softplus = if z > 0.0 {
                z + (-z).exp().ln_1p()
            } else {
                z.exp().ln_1p()
            };
            softplus - yi * z
        })
        .sum::<f64>()
        / n;
    nll + 0.5 * l2 * coef.iter().map(|c| c * c).sum::<f64>()
}

pub fn fit_logistic(
    x: &[Vec<f64>],
    labels: &[u8],
    config: &LogisticConfig,
) -> Result<LogisticModel> {
    config.validate()?;
    let (n, p) = check_matrix(x)?;
    let y = validate_binary_labels(labels)?;
    if y.len() != n {
        return Err(Error::Data(format!("{} labels for {n} rows", y.len())));
    }

    let mut coef = vec![0.0; p];
    let mut intercept = 0.0;
    let mut history = vec![mean_nll(x, &y, &coef, intercept, config.l2)];
    for _ in 0..config.n_epochs {
        let mut grad = vec![0.0; p];
        let mut grad0 = 0.0;
        for (row, &yi) in x.iter().zip(&y) {
            let z = intercept + coef.iter().zip(row).map(|(c, v)| c * v).sum::<f64>();
            let residual = sigmoid(z) - yi;
            for (g, v) in grad.iter_mut().zip(row) {
                *g += residual * v;
            }
            grad0 += residual;
        }
        for (c, g) in coef.iter_mut().zip(&grad) {
            *c -= config.learning_rate * (g / n as f64 + config.l2 * *c);
        }
        intercept -= config.learning_rate * grad0 / n as f64;
        history.push(mean_nll(x, &y, &coef, intercept, config.l2));
    }
    if !(intercept.is_finite() && coef.iter().all(|c| c.is_finite())) {
        return Err(Error::Diverged(
            "logistic coefficients are not finite".into(),
        ));
    }
    Ok(LogisticModel {
        coefficients: coef,
        intercept,
        threshold: config.threshold,
        loss_history: history,
        config: *config,
    })
}
