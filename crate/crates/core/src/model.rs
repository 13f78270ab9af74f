//! Crate-wide error type and the prediction traits shared by every
//! trained model.

use thiserror::Error;

/// Unified error type for data handling, configuration and training.
#[derive(Debug, Error)]
pub enum Error {
    /// A hyperparameter or configuration value is outside its legal range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Input data is malformed, inconsistent, or unusable.
    #[error("data error: {0}")]
    Data(String),
    /// The requested operation is not defined for this model kind.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// Training produced a non-finite quantity and cannot continue.
    #[error("training diverged: {0}")]
    Diverged(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Data(e.to_string())
    }
}

/// A trained regression model: maps a feature row to a real prediction.
pub trait Regressor {
    fn predict_one(&self, row: &[f64]) -> f64;

    fn predict(&self, rows: &[Vec<f64>]) -> Vec<f64> {
        rows.iter().map(|r| self.predict_one(r)).collect()
    }
}

/// A trained binary classifier. `score_one` must be monotone in the
/// model's confidence that the row belongs to class 1 (used for ROC),
/// while `label_one` applies the model's own thresholding rule.
pub trait Classifier {
    fn score_one(&self, row: &[f64]) -> f64;
    fn label_one(&self, row: &[f64]) -> u8;

    fn scores(&self, rows: &[Vec<f64>]) -> Vec<f64> {
        rows.iter().map(|r| self.score_one(r)).collect()
    }

    fn labels(&self, rows: &[Vec<f64>]) -> Vec<u8> {
        rows.iter().map(|r| self.label_one(r)).collect()
    }
}

/// Validates that class labels are binary, returning them as f64 targets.
pub(crate) fn validate_binary_labels(labels: &[u8]) -> Result<Vec<f64>> {
    for (i, &l) in labels.iter().enumerate() {
        if l > 1 {
            return Err(Error::Data(format!(
                "label at row {i} is {l}; binary labels must be 0 or 1"
            )));
        }
    }
    Ok(labels.iter().map(|&l| f64::from(l)).collect())
}
