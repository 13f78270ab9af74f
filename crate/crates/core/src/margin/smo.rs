//! Sequential minimal optimization for box-constrained quadratic duals
//!
//! ```text
//! min ½ αᵀQα + pᵀα   s.t.   uᵀα = 0,   0 ≤ α_t ≤ C,   u_t ∈ {−1,+1}
//! ```
//!
//! which covers both the soft-margin classification dual (Q = y yᵀ ∘ K,
//! p = −1, u = y) and the ε-tube regression dual over stacked (α, α*)
//! multipliers. Each iteration picks the maximal violating pair
//!
//! ```text
//! i = argmax over I_up of −u_t G_t,   j = argmin over I_low of −u_t G_t
//! ```
//!
//! with G = Qα + p, solves the two-variable subproblem analytically and
//! clips to the box; the iteration stops when the violation gap m − M
//! falls below the tolerance.

/// Curvature floor for numerically flat directions.
const TAU: f64 = 1e-12;

pub(crate) struct SmoProblem {
    pub q: Vec<Vec<f64>>,
    pub p: Vec<f64>,
    /// Equality-constraint signs, each −1 or +1.
    pub u: Vec<f64>,
    pub c: f64,
    pub tolerance: f64,
    /// Maximum number of pair updates; 0 returns the zero solution with
    /// bias 0 (the pre-training state).
    pub max_passes: usize,
}

pub(crate) struct SmoSolution {
    pub alpha: Vec<f64>,
    pub b: f64,
    /// Maximized dual objective −(½αᵀQα + pᵀα), recorded before the first
    /// update and after every pair update.
    pub objective_history: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

pub(crate) fn solve(problem: &SmoProblem) -> SmoSolution {
    let SmoProblem {
        q,
        p,
        u,
        c,
        tolerance,
        max_passes,
    } = problem;
    let (c, tolerance) = (*c, *tolerance);
    let n = p.len();
    let mut alpha = vec![0.0; n];
    let mut g = p.clone();
    let mut history = vec![0.0];
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..*max_passes {
        let mut m = f64::NEG_INFINITY;
        let mut big_m = f64::INFINITY;
        let mut i = usize::MAX;
        let mut j = usize::MAX;
        for t in 0..n {
            let v = -u[t] * g[t];
            let in_up = (u[t] > 0.0 && alpha[t] < c) || (u[t] < 0.0 && alpha[t] > 0.0);
            let in_low = (u[t] > 0.0 && alpha[t] > 0.0) || (u[t] < 0.0 && alpha[t] < c);
            if in_up && v > m {
                m = v;
                i = t;
            }
            if in_low && v < big_m {
                big_m = v;
                j = t;
            }
        }
        if i == usize::MAX || j == usize::MAX || m - big_m <= tolerance {
            converged = true;
            break;
        }

        let (old_i, old_j) = (alpha[i], alpha[j]);
        if u[i] != u[j] {
            let quad = (q[i][i] + q[j][j] + 2.0 * q[i][j]).max(TAU);
            let delta = (-g[i] - g[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else {
                if alpha[i] < 0.0 {
                    alpha[i] = 0.0;
                    alpha[j] = -diff;
                }
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = c + diff;
                }
            }
        } else {
            let quad = (q[i][i] + q[j][j] - 2.0 * q[i][j]).max(TAU);
            let delta = (g[i] - g[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = sum;
                }
                if alpha[i] < 0.0 {
                    alpha[i] = 0.0;
                    alpha[j] = sum;
                }
            }
        }

        let (d_i, d_j) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            g[t] += q[t][i] * d_i + q[t][j] * d_j;
        }
        iterations += 1;

        // ½αᵀQα + pᵀα = ½(αᵀG + αᵀp) since G = Qα + p.
        let a_g: f64 = alpha.iter().zip(&g).map(|(a, gi)| a * gi).sum();
        let a_p: f64 = alpha.iter().zip(p.iter()).map(|(a, pi)| a * pi).sum();
        history.push(-0.5 * (a_g + a_p));
    }

    let b = if *max_passes == 0 {
        0.0
    } else {
        bias(&alpha, &g, u, c)
    };
    SmoSolution {
        alpha,
        b,
        objective_history: history,
        converged,
        iterations,
    }
}

/// Bias from the KKT conditions: the mean of u_t·G_t over free vectors,
/// or the midpoint of the bound-derived bracket when none are free.
fn bias(alpha: &[f64], g: &[f64], u: &[f64], c: f64) -> f64 {
    let mut upper = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    let mut sum_free = 0.0;
    let mut n_free = 0usize;
    for t in 0..alpha.len() {
        let yg = u[t] * g[t];
        if alpha[t] >= c {
            if u[t] < 0.0 {
                upper = upper.min(yg);
            } else {
                lower = lower.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if u[t] > 0.0 {
                upper = upper.min(yg);
            } else {
                lower = lower.max(yg);
            }
        } else {
            n_free += 1;
            sum_free += yg;
        }
    }
    let r = if n_free > 0 {
        sum_free / n_free as f64
    } else {
        0.5 * (upper + lower)
    };
    -r
}
