//! Support vector regression (ε-insensitive tube) and soft-margin
//! classification on top of the shared SMO dual solver.

use serde::{Deserialize, Serialize};

use super::kernel::Kernel;
use super::smo::{solve, SmoProblem};
use crate::model::{validate_binary_labels, Classifier, Error, Regressor, Result};
use crate::tree::check_matrix;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SvmParams {
    /// Slack penalty; larger values punish tube/margin violations harder.
    pub c: f64,
    /// Half-width of the ε-insensitive tube (regression only).
    pub epsilon: f64,
    /// `None` selects an RBF kernel with gamma = 1/(n_features·Var(X))
    /// computed from the training matrix at fit time.
    pub kernel: Option<Kernel>,
    /// KKT violation gap at which optimization stops.
    pub tolerance: f64,
    /// Cap on SMO pair updates; 0 leaves the model in its pre-training
    /// state (all multipliers zero, bias zero).
    pub max_passes: usize,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            c: 1.0,
            epsilon: 0.1,
            kernel: None,
            tolerance: 1e-3,
            max_passes: 20_000,
        }
    }
}

impl SvmParams {
    fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "C must be positive, got {}",
                self.c
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be nonnegative, got {}",
                self.epsilon
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if let Some(k) = &self.kernel {
            k.validate()?;
        }
        Ok(())
    }

    fn resolve_kernel(&self, x: &[Vec<f64>]) -> Kernel {
        self.kernel.unwrap_or_else(|| Kernel::rbf_scale(x))
    }
}

/// Flags feature columns that do not look standardized; kernel methods
/// assume comparable feature scales.
fn standardization_warnings(x: &[Vec<f64>]) -> Vec<String> {
    let n = x.len() as f64;
    let p = x[0].len();
    let mut warnings = Vec::new();
    for f in 0..p {
        let mean: f64 = x.iter().map(|r| r[f]).sum::<f64>() / n;
        let var: f64 = x.iter().map(|r| (r[f] - mean) * (r[f] - mean)).sum::<f64>() / n;
        let std = var.sqrt();
        if mean.abs() > 0.5 || !(0.2..=5.0).contains(&std) {
            warnings.push(format!(
                "feature column {f} does not look standardized (mean {mean:.3}, std {std:.3})"
            ));
        }
    }
    warnings
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SvrModel {
    pub support_vectors: Vec<Vec<f64>>,
    /// Dual coefficient (α_i − α_i*) per support vector.
    pub coefficients: Vec<f64>,
    pub bias: f64,
    pub kernel: Kernel,
    pub params: SvmParams,
    pub converged: bool,
    pub iterations: usize,
    /// Maximized dual objective before the first update and after each
    /// pair update.
    pub dual_objective: Vec<f64>,
    pub warnings: Vec<String>,
}

impl Regressor for SvrModel {
    fn predict_one(&self, row: &[f64]) -> f64 {
        self.support_vectors
            .iter()
            .zip(&self.coefficients)
            .map(|(sv, c)| c * self.kernel.evaluate(sv, row))
            .sum::<f64>()
            + self.bias
    }
}

/// Fit ε-tube regression by solving the stacked (α, α*) dual: 2n
/// multipliers with constraint signs (+1, −1), Gram blocks (K, −K; −K, K)
/// and linear terms (ε − y, ε + y).
pub fn fit_svr(x: &[Vec<f64>], y: &[f64], params: &SvmParams) -> Result<SvrModel> {
    params.validate()?;
    let (n, _) = check_matrix(x)?;
    if n < 2 {
        return Err(Error::Data(
            "support vector regression needs at least 2 samples".into(),
        ));
    }
    if y.len() != n {
        return Err(Error::Data(format!("{} targets for {n} rows", y.len())));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("targets must be finite".into()));
    }
    let kernel = params.resolve_kernel(x);
    let gram: Vec<Vec<f64>> = x
        .iter()
        .map(|a| x.iter().map(|b| kernel.evaluate(a, b)).collect())
        .collect();

    let m = 2 * n;
    let mut q = vec![vec![0.0; m]; m];
    let mut p = vec![0.0; m];
    let mut u = vec![0.0; m];
    for i in 0..n {
        for j in 0..n {
            q[i][j] = gram[i][j];
            q[i][n + j] = -gram[i][j];
            q[n + i][j] = -gram[i][j];
            q[n + i][n + j] = gram[i][j];
        }
        p[i] = params.epsilon - y[i];
        p[n + i] = params.epsilon + y[i];
        u[i] = 1.0;
        u[n + i] = -1.0;
    }

    let sol = solve(&SmoProblem {
        q,
        p,
        u,
        c: params.c,
        tolerance: params.tolerance,
        max_passes: params.max_passes,
    });

    let mut support_vectors = Vec::new();
    let mut coefficients = Vec::new();
    for (i, row) in x.iter().enumerate() {
        let beta = sol.alpha[i] - sol.alpha[n + i];
        if beta.abs() > 1e-12 {
            support_vectors.push(row.clone());
            coefficients.push(beta);
        }
    }
    Ok(SvrModel {
        support_vectors,
        coefficients,
        bias: sol.b,
        kernel,
        params: *params,
        converged: sol.converged,
        iterations: sol.iterations,
        dual_objective: sol.objective_history,
        warnings: standardization_warnings(x),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SvcModel {
    pub support_vectors: Vec<Vec<f64>>,
    /// Dual coefficient y_i·α_i per support vector.
    pub coefficients: Vec<f64>,
    pub bias: f64,
    pub kernel: Kernel,
    pub params: SvmParams,
    pub converged: bool,
    pub iterations: usize,
    pub dual_objective: Vec<f64>,
    pub warnings: Vec<String>,
}

impl SvcModel {
    /// Signed distance-like decision value w·φ(x) + b via the kernel
    /// expansion.
    pub fn decision_value(&self, row: &[f64]) -> f64 {
        self.support_vectors
            .iter()
            .zip(&self.coefficients)
            .map(|(sv, c)| c * self.kernel.evaluate(sv, row))
            .sum::<f64>()
            + self.bias
    }
}

impl Classifier for SvcModel {
    fn score_one(&self, row: &[f64]) -> f64 {
        self.decision_value(row)
    }

    fn label_one(&self, row: &[f64]) -> u8 {
        u8::from(self.decision_value(row) >= 0.0)
    }
}

/// Fit a soft-margin classifier: labels map {0,1} → {−1,+1} and the SMO
/// core solves the usual dual with Q = (y yᵀ) ∘ K, p = −1.
pub fn fit_svc(x: &[Vec<f64>], labels: &[u8], params: &SvmParams) -> Result<SvcModel> {
    params.validate()?;
    let (n, _) = check_matrix(x)?;
    let y01 = validate_binary_labels(labels)?;
    if y01.len() != n {
        return Err(Error::Data(format!("{} labels for {n} rows", y01.len())));
    }
    let signs: Vec<f64> = y01.iter().map(|&v| 2.0 * v - 1.0).collect();
    if signs.iter().all(|&s| s == signs[0]) {
        return Err(Error::Data(
            "classification training data has a single class".into(),
        ));
    }
    let kernel = params.resolve_kernel(x);
    let q: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| signs[i] * signs[j] * kernel.evaluate(&x[i], &x[j]))
                .collect()
        })
        .collect();

    let sol = solve(&SmoProblem {
        q,
        p: vec![-1.0; n],
        u: signs.clone(),
        c: params.c,
        tolerance: params.tolerance,
        max_passes: params.max_passes,
    });

    let mut support_vectors = Vec::new();
    let mut coefficients = Vec::new();
    for i in 0..n {
        if sol.alpha[i] > 1e-12 {
            support_vectors.push(x[i].clone());
            coefficients.push(signs[i] * sol.alpha[i]);
        }
    }
    Ok(SvcModel {
        support_vectors,
        coefficients,
        bias: sol.b,
        kernel,
        params: *params,
        converged: sol.converged,
        iterations: sol.iterations,
        dual_objective: sol.objective_history,
        warnings: standardization_warnings(x),
    })
}
