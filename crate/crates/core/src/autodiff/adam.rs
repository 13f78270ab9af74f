use serde::{Deserialize, Serialize};

use crate::model::{Error, Result};

/// Adam optimizer state: per-parameter first and second moment estimates
/// plus the step counter used for bias correction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdamState {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub step: u64,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl AdamState {
    /// Fresh state with the usual defaults (β₁ = 0.9, β₂ = 0.999,
    /// ε = 1e-8, learning rate 1e-3).
    pub fn new(n_params: usize) -> Self {
        AdamState {
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            step: 0,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
        }
    }

    pub fn with_learning_rate(mut self, learning_rate: f64) -> Self {
        self.learning_rate = learning_rate;
        self
    }
}

/// One Adam update in place: advances the step counter, refreshes both
/// moment vectors and applies the bias-corrected step to `params`.
pub fn adam_step(state: &mut AdamState, params: &mut [f64], grad: &[f64]) -> Result<()> {
    if params.len() != state.m.len() || grad.len() != state.m.len() {
        return Err(Error::Data(format!(
            "optimizer holds {} parameters but got {} params / {} gradients",
            state.m.len(),
            params.len(),
            grad.len()
        )));
    }
    state.step += 1;
    let t = state.step as i32;
    let bias1 = 1.0 - state.beta1.powi(t);
    let bias2 = 1.0 - state.beta2.powi(t);
    for i in 0..params.len() {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
        let m_hat = state.m[i] / bias1;
        let v_hat = state.v[i] / bias2;
        params[i] -= state.learning_rate * m_hat / (v_hat.sqrt() + state.epsilon);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_leaves_parameters_unchanged_but_advances_the_step() {
        let mut state = AdamState::new(3);
        let mut params = vec![1.0, -2.0, 0.5];
        adam_step(&mut state, &mut params, &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(params, vec![1.0, -2.0, 0.5]);
        assert_eq!(state.step, 1);
    }

    #[test]
    fn first_step_moves_by_roughly_the_learning_rate() {
        // Bias correction makes m̂ = g and v̂ = g², so the first update is
        // −lr·g/(|g| + ε) ≈ −lr·sign(g).
        let mut state = AdamState::new(1);
        let mut params = vec![0.0];
        adam_step(&mut state, &mut params, &[0.5]).unwrap();
        assert!(
            (params[0] + state.learning_rate).abs() < 1e-9,
            "first step was {}",
            params[0]
        );
    }

    #[test]
    fn parameters_are_updated_independently() {
        let grads = [0.5, -1.25];
        let mut fwd_state = AdamState::new(2);
        let mut fwd = vec![0.1, 0.2];
        for _ in 0..5 {
            adam_step(&mut fwd_state, &mut fwd, &grads).unwrap();
        }

        // The same parameters registered in the opposite order see the
        // exact same per-parameter trajectory.
        let mut rev_state = AdamState::new(2);
        let mut rev = vec![0.2, 0.1];
        for _ in 0..5 {
            adam_step(&mut rev_state, &mut rev, &[-1.25, 0.5]).unwrap();
        }
        assert_eq!(fwd[0], rev[1]);
        assert_eq!(fwd[1], rev[0]);
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let mut state = AdamState::new(2);
        let mut params = vec![0.0, 0.0];
        assert!(adam_step(&mut state, &mut params, &[1.0]).is_err());
        let mut short = vec![0.0];
        assert!(adam_step(&mut state, &mut short, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn descends_a_quadratic_bowl() {
        // f(θ) = (θ − 3)², gradient 2(θ − 3).
        let mut state = AdamState::new(1).with_learning_rate(0.05);
        let mut params = vec![0.0];
        for _ in 0..2000 {
            let g = 2.0 * (params[0] - 3.0);
            adam_step(&mut state, &mut params, &[g]).unwrap();
        }
        assert!((params[0] - 3.0).abs() < 1e-3, "ended at {}", params[0]);
    }
}
