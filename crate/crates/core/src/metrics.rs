//! Evaluation metrics and diagnostic series: MSE/MAE/RMSE/R², accuracy,
//! F1, ROC-AUC (Mann-Whitney pairwise rule), ROC curve points, confusion
//! matrix, residual series and normal Q-Q points.

use serde::{Deserialize, Serialize};

use crate::data::ColumnStats;
use crate::model::{Error, Result};

/// Regression metric set for one model evaluation.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RegressionMetrics {
    pub mse: f64,
    pub mae: f64,
    pub rmse: f64,
    /// `None` when the target has zero variance but the fit is imperfect
    /// (R² would be -inf); see `r2_degenerate`.
    pub r2: Option<f64>,
    /// True when a zero-target-variance convention was applied to R².
    pub r2_degenerate: bool,
    pub n: usize,
}

/// MSE, MAE, RMSE and R² = 1 - MSE/Var(y_true) (population variance).
///
/// Conventions for a zero-variance target: a perfect fit scores R² = 0,
/// an imperfect one has no defined R²; both cases set `r2_degenerate`.
pub fn regression_metrics(y_true: &[f64], y_pred: &[f64]) -> Result<RegressionMetrics> {
    let n = check_lengths(y_true.len(), y_pred.len())?;
    let mse = y_true
        .iter()
        .zip(y_pred)
        .map(|(t, p)| (t - p) * (t - p))
        .sum::<f64>()
        / n as f64;
    let mae = y_true
        .iter()
        .zip(y_pred)
        .map(|(t, p)| (t - p).abs())
        .sum::<f64>()
        / n as f64;
    let variance = {
        let s = ColumnStats::fit(y_true);
        s.std * s.std
    };
    let (r2, r2_degenerate) = if variance == 0.0 {
        if mse == 0.0 {
            (Some(0.0), true)
        } else {
            (None, true)
        }
    } else {
        (Some(1.0 - mse / variance), false)
    };
    Ok(RegressionMetrics {
        mse,
        mae,
        rmse: mse.sqrt(),
        r2,
        r2_degenerate,
        n,
    })
}

/// 2×2 confusion counts for binary labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub true_negative: usize,
    pub false_positive: usize,
    pub false_negative: usize,
    pub true_positive: usize,
}

impl ConfusionMatrix {
    pub fn n(&self) -> usize {
        self.true_negative + self.false_positive + self.false_negative + self.true_positive
    }

    pub fn accuracy(&self) -> f64 {
        (self.true_positive + self.true_negative) as f64 / self.n() as f64
    }
}

pub fn confusion_matrix(labels_true: &[u8], labels_pred: &[u8]) -> Result<ConfusionMatrix> {
    check_lengths(labels_true.len(), labels_pred.len())?;
    check_binary(labels_true)?;
    check_binary(labels_pred)?;
    let mut m = ConfusionMatrix {
        true_negative: 0,
        false_positive: 0,
        false_negative: 0,
        true_positive: 0,
    };
    for (&t, &p) in labels_true.iter().zip(labels_pred) {
        match (t, p) {
            (0, 0) => m.true_negative += 1,
            (0, 1) => m.false_positive += 1,
            (1, 0) => m.false_negative += 1,
            _ => m.true_positive += 1,
        }
    }
    Ok(m)
}

/// Classification metric set for one model evaluation.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ClassificationMetrics {
    pub accuracy: f64,
    /// F1 for the positive class; 0 when precision + recall is 0.
    pub f1: f64,
    /// True when the F1 zero-denominator convention was applied.
    pub f1_degenerate: bool,
    /// `None` when the true labels contain a single class (AUC undefined).
    pub roc_auc: Option<f64>,
    pub confusion: ConfusionMatrix,
}

/// Accuracy, positive-class F1 and pairwise ROC-AUC. A single-class truth
/// vector leaves `roc_auc` unset; accuracy and F1 are still returned.
pub fn classification_metrics(
    labels_true: &[u8],
    labels_pred: &[u8],
    scores: &[f64],
) -> Result<ClassificationMetrics> {
    check_lengths(labels_true.len(), scores.len())?;
    let confusion = confusion_matrix(labels_true, labels_pred)?;
    let (f1, f1_degenerate) = f1_from_confusion(&confusion);
    let roc_auc = roc_auc_pairwise(labels_true, scores).ok();
    Ok(ClassificationMetrics {
        accuracy: confusion.accuracy(),
        f1,
        f1_degenerate,
        roc_auc,
        confusion,
    })
}

/// F1 = 2·precision·recall/(precision+recall), with the 0-when-undefined
/// convention. Returns (f1, degenerate flag).
pub fn f1_from_confusion(m: &ConfusionMatrix) -> (f64, bool) {
    let tp = m.true_positive as f64;
    let precision_denominator = m.true_positive + m.false_positive;
    let recall_denominator = m.true_positive + m.false_negative;
    let precision = if precision_denominator == 0 {
        0.0
    } else {
        tp / precision_denominator as f64
    };
    let recall = if recall_denominator == 0 {
        0.0
    } else {
        tp / recall_denominator as f64
    };
    if precision + recall == 0.0 {
        (0.0, true)
    } else {
        (2.0 * precision * recall / (precision + recall), false)
    }
}

/// ROC-AUC by the Mann-Whitney pairwise rule: over all (positive,
/// negative) pairs, a win scores 1 and a score tie scores 0.5.
pub fn roc_auc_pairwise(labels: &[u8], scores: &[f64]) -> Result<f64> {
    check_scores(labels, scores)?;
    let positives: Vec<f64> = labels
        .iter()
        .zip(scores)
        .filter(|(&l, _)| l == 1)
        .map(|(_, &s)| s)
        .collect();
    let negatives: Vec<f64> = labels
        .iter()
        .zip(scores)
        .filter(|(&l, _)| l == 0)
        .map(|(_, &s)| s)
        .collect();
    let mut credit = 0.0;
    for &p in &positives {
        for &q in &negatives {
            if p > q {
                credit += 1.0;
            } else if p == q {
                credit += 0.5;
            }
        }
    }
    Ok(credit / (positives.len() as f64 * negatives.len() as f64))
}

/// ROC curve points (FPR, TPR), sweeping thresholds over distinct scores
/// in descending order. Starts at (0,0) and ends at (1,1); the trapezoidal
/// area under these points equals the pairwise AUC.
pub fn roc_points(labels: &[u8], scores: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_scores(labels, scores)?;
    let n = labels.len();
    let n_pos = labels.iter().filter(|&&l| l == 1).count();
    let n_neg = n - n_pos;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));

    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < n {
        let s = scores[order[i]];
        while i < n && scores[order[i]] == s {
            if labels[order[i]] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push((fp as f64 / n_neg as f64, tp as f64 / n_pos as f64));
    }
    Ok(points)
}

/// Trapezoidal area under an ordered (x, y) polyline.
pub fn trapezoid_area(points: &[(f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
        .sum()
}

/// (prediction, residual) pairs with residual = y_true - y_pred, in input
/// order, for residual-vs-predicted diagnostic plots.
pub fn residual_series(y_true: &[f64], y_pred: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_lengths(y_true.len(), y_pred.len())?;
    Ok(y_pred
        .iter()
        .zip(y_true)
        .map(|(&p, &t)| (p, t - p))
        .collect())
}

/// Normal Q-Q points: (theoretical standard-normal quantile, ordered
/// standardized residual), with plotting positions (i - 0.5)/n and
/// population-std standardization. Both coordinates come out ascending.
pub fn qq_points(residuals: &[f64]) -> Result<Vec<(f64, f64)>> {
    let n = residuals.len();
    if n < 3 {
        return Err(Error::Data(format!(
            "need at least 3 residuals for Q-Q points, found {n}"
        )));
    }
    let stats = ColumnStats::fit(residuals);
    let mut standardized: Vec<f64> = residuals.iter().map(|&r| stats.transform(r)).collect();
    standardized.sort_by(f64::total_cmp);
    Ok(standardized
        .iter()
        .enumerate()
        .map(|(i, &z)| (inverse_normal_cdf((i as f64 + 0.5) / n as f64), z))
        .collect())
}

/// Inverse standard-normal CDF via Acklam's rational approximation
/// (peak absolute error ≈ 1.15e-9 over (0,1), well inside the 1e-7
/// contract used for Q-Q plots).
pub fn inverse_normal_cdf(p: f64) -> f64 {
    assert!(
        p > 0.0 && p < 1.0,
        "inverse normal CDF needs p in (0,1), got {p}"
    );

    // Acklam's published coefficients, verbatim.
    #[allow(clippy::excessive_precision)]
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < P_LOW {
        tail((-2.0 * p.ln()).sqrt())
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    }
}

fn check_lengths(a: usize, b: usize) -> Result<usize> {
    if a != b {
        return Err(Error::Data(format!("length mismatch: {a} vs {b}")));
    }
    if a == 0 {
        return Err(Error::Data("empty input".into()));
    }
    Ok(a)
}

fn check_binary(labels: &[u8]) -> Result<()> {
    if labels.iter().any(|&l| l > 1) {
        return Err(Error::Data("labels must be binary (0 or 1)".into()));
    }
    Ok(())
}

fn check_scores(labels: &[u8], scores: &[f64]) -> Result<()> {
    check_lengths(labels.len(), scores.len())?;
    check_binary(labels)?;
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::Data("scores must be finite".into()));
    }
    let n_pos = labels.iter().filter(|&&l| l == 1).count();
    if n_pos == 0 || n_pos == labels.len() {
        return Err(Error::Data(
            "ROC is undefined when the true labels contain a single class".into(),
        ));
    }
    Ok(())
}
