//! Fully connected feed-forward network with tanh hidden activations and
//! an identity output layer. Parameters live in one flat vector (per layer:
//! weights in row-major `[out][in]` order, then biases), which keeps the
//! optimizer and the tape registration trivial.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::dual::Dual2;
use super::scalar::Real;
use super::tape::{gradient, Tape, Var};
use crate::model::{Error, Result};
use crate::rng::stream;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MlpNetwork {
    /// Width of every layer, inputs first. At least two entries.
    pub layer_sizes: Vec<usize>,
    /// Flat parameter vector; see the module docs for the layout.
    pub params: Vec<f64>,
}

/// Serialized training snapshot: enough to resume or audit a run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MlpCheckpoint {
    pub layer_sizes: Vec<usize>,
    pub params: Vec<f64>,
    pub seed: u64,
    pub step: u64,
}

fn validate_layer_sizes(layer_sizes: &[usize]) -> Result<()> {
    if layer_sizes.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "a network needs an input and an output layer; got {} layer sizes",
            layer_sizes.len()
        )));
    }
    if layer_sizes.contains(&0) {
        return Err(Error::InvalidParameter(
            "layer sizes must all be positive".into(),
        ));
    }
    let out = *layer_sizes.last().expect("checked non-empty");
    if out > 2 {
        return Err(Error::InvalidParameter(format!(
            "output layer must be 1 or 2 wide, got {out}"
        )));
    }
    Ok(())
}

fn param_count(layer_sizes: &[usize]) -> usize {
    layer_sizes.windows(2).map(|w| w[1] * (w[0] + 1)).sum()
}

/// Forward pass written once over any [`Real`] scalar: plain floats for
/// prediction, duals for input derivatives, tape variables for parameter
/// gradients, or duals of tape variables for both at once.
pub fn forward_generic<T: Real>(
    layer_sizes: &[usize],
    params: &[T],
    inputs: &[T],
) -> Result<Vec<T>> {
    validate_layer_sizes(layer_sizes)?;
    if inputs.len() != layer_sizes[0] {
        return Err(Error::Data(format!(
            "expected {} inputs, got {}",
            layer_sizes[0],
            inputs.len()
        )));
    }
    if params.len() != param_count(layer_sizes) {
        return Err(Error::Data(format!(
            "expected {} parameters, got {}",
            param_count(layer_sizes),
            params.len()
        )));
    }

    let n_layers = layer_sizes.len() - 1;
    let mut activations: Vec<T> = inputs.to_vec();
    let mut offset = 0usize;
    for layer in 0..n_layers {
        let (n_in, n_out) = (layer_sizes[layer], layer_sizes[layer + 1]);
        let weights = &params[offset..offset + n_out * n_in];
        let biases = &params[offset + n_out * n_in..offset + n_out * (n_in + 1)];
        offset += n_out * (n_in + 1);

        let mut next = Vec::with_capacity(n_out);
        for o in 0..n_out {
            let mut z = biases[o];
            for (i, &a) in activations.iter().enumerate() {
                z = z + weights[o * n_in + i] * a;
            }
            next.push(if layer + 1 < n_layers { z.tanh() } else { z });
        }
        activations = next;
    }
    Ok(activations)
}

/// Xavier-uniform initialization: weights drawn from
/// `U(−a, a)` with `a = sqrt(6 / (fan_in + fan_out))` per layer, biases
/// zero. The draw order is fixed, so a seed pins every parameter.
pub fn init_weights(layer_sizes: &[usize], seed: u64) -> Result<MlpNetwork> {
    validate_layer_sizes(layer_sizes)?;
    let mut params = Vec::with_capacity(param_count(layer_sizes));
    for (layer, w) in layer_sizes.windows(2).enumerate() {
        let (n_in, n_out) = (w[0], w[1]);
        let a = (6.0 / (n_in + n_out) as f64).sqrt();
        let mut rng = stream(seed, "mlp-init", layer as u64);
        for _ in 0..n_out * n_in {
            params.push(rng.gen_range(-a..a));
        }
        params.extend(std::iter::repeat_n(0.0, n_out));
    }
    Ok(MlpNetwork {
        layer_sizes: layer_sizes.to_vec(),
        params,
    })
}

impl MlpNetwork {
    pub fn n_inputs(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn n_outputs(&self) -> usize {
        *self.layer_sizes.last().expect("validated")
    }

    pub fn forward(&self, inputs: &[f64]) -> Result<Vec<f64>> {
        forward_generic(&self.layer_sizes, &self.params, inputs)
    }

    /// Derivative of each output channel with respect to input `index`,
    /// computed exactly by one forward pass with a seeded dual number.
    /// `order` selects the first or second derivative.
    pub fn input_derivatives(
        &self,
        inputs: &[f64],
        index: usize,
        order: usize,
    ) -> Result<Vec<f64>> {
        if !(1..=2).contains(&order) {
            return Err(Error::InvalidParameter(format!(
                "derivative order must be 1 or 2, got {order}"
            )));
        }
        if index >= self.n_inputs() {
            return Err(Error::InvalidParameter(format!(
                "input index {index} out of range for {} inputs",
                self.n_inputs()
            )));
        }
        if inputs.len() != self.n_inputs() {
            return Err(Error::Data(format!(
                "expected {} inputs, got {}",
                self.n_inputs(),
                inputs.len()
            )));
        }
        let dual_inputs: Vec<Dual2<f64>> = inputs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                if i == index {
                    Dual2::variable(x)
                } else {
                    Dual2::constant(x)
                }
            })
            .collect();
        let dual_params: Vec<Dual2<f64>> =
            self.params.iter().map(|&p| Dual2::constant(p)).collect();
        let out = forward_generic(&self.layer_sizes, &dual_params, &dual_inputs)?;
        Ok(out
            .iter()
            .map(|d| if order == 1 { d.d } else { d.dd })
            .collect())
    }

    /// Gradient of a scalar loss with respect to every parameter.
    ///
    /// The closure receives the tape and the parameters registered on it as
    /// variables, builds the loss (typically via [`forward_generic`], with
    /// inputs lifted as constants), and returns it. One reverse sweep then
    /// produces the exact gradient. A non-finite loss is a training
    /// divergence and is reported as an error.
    pub fn parameter_gradient<F>(&self, build_loss: F) -> Result<(f64, Vec<f64>)>
    where
        F: for<'t> Fn(&'t Tape, &[Var<'t>]) -> Result<Var<'t>>,
    {
        let tape = Tape::new();
        let param_vars: Vec<Var<'_>> = self.params.iter().map(|&p| tape.var(p)).collect();
        let loss = build_loss(&tape, &param_vars)?;
        if !loss.v.is_finite() {
            return Err(Error::Diverged(format!("loss is not finite ({})", loss.v)));
        }
        Ok((loss.v, gradient(loss, &param_vars)))
    }

    pub fn checkpoint(&self, seed: u64, step: u64) -> MlpCheckpoint {
        MlpCheckpoint {
            layer_sizes: self.layer_sizes.clone(),
            params: self.params.clone(),
            seed,
            step,
        }
    }

    pub fn from_checkpoint(c: &MlpCheckpoint) -> Result<Self> {
        validate_layer_sizes(&c.layer_sizes)?;
        if c.params.len() != param_count(&c.layer_sizes) {
            return Err(Error::Data(format!(
                "checkpoint holds {} parameters but the architecture needs {}",
                c.params.len(),
                param_count(&c.layer_sizes)
            )));
        }
        Ok(MlpNetwork {
            layer_sizes: c.layer_sizes.clone(),
            params: c.params.clone(),
        })
    }
}
