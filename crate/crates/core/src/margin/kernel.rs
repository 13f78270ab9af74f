//! Kernel functions for the support vector models.

use serde::{Deserialize, Serialize};

use crate::model::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Kernel {
    Linear,
    Rbf { gamma: f64 },
}

impl Kernel {
    pub fn evaluate(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Kernel::Linear => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            Kernel::Rbf { gamma } => {
                let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                (-gamma * sq).exp()
            }
        }
    }

    /// RBF kernel with gamma = 1 / (n_features · Var(X)), the variance
    /// taken over every entry of the matrix. Constant data falls back to
    /// gamma = 1.
    pub fn rbf_scale(x: &[Vec<f64>]) -> Kernel {
        let p = x.first().map_or(0, Vec::len);
        let n_vals = (x.len() * p) as f64;
        if n_vals == 0.0 {
            return Kernel::Rbf { gamma: 1.0 };
        }
        let mean: f64 = x.iter().flatten().sum::<f64>() / n_vals;
        let var: f64 = x
            .iter()
            .flatten()
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>()
            / n_vals;
        let gamma = if var > 0.0 {
            1.0 / (p as f64 * var)
        } else {
            1.0
        };
        Kernel::Rbf { gamma }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if let Kernel::Rbf { gamma } = self {
            if !(gamma.is_finite() && *gamma > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "rbf gamma must be positive, got {gamma}"
                )));
            }
        }
        Ok(())
    }
}
