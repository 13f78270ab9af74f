use serde::{Deserialize, Serialize};

use crate::model::{Error, Result};

/// Mean squared error between predictions and observed targets.
pub fn data_loss(predictions: &[f64], targets: &[f64]) -> Result<f64> {
    if predictions.len() != targets.len() {
        return Err(Error::Data(format!(
            "{} predictions against {} targets",
            predictions.len(),
            targets.len()
        )));
    }
    if predictions.is_empty() {
        return Err(Error::Data("data loss over an empty batch".into()));
    }
    for (i, &p) in predictions.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::Diverged(format!(
                "prediction for batch sample {i} is not finite ({p})"
            )));
        }
    }
    Ok(predictions
        .iter()
        .zip(targets)
        .map(|(p, y)| (p - y) * (p - y))
        .sum::<f64>()
        / predictions.len() as f64)
}

/// Composite objective: `physics_weight · mean squared residual + data`.
pub fn total_loss(mean_sq_residual: f64, data: f64, physics_weight: f64) -> f64 {
    physics_weight * mean_sq_residual + data
}

/// One epoch of the loss history. `total` is always exactly
/// `physics_weight · physics + data` as computed in f64.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LossRecord {
    pub epoch: usize,
    pub physics: f64,
    pub data: f64,
    pub total: f64,
}
