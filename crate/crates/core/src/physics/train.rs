//! Full-batch physics-informed training and the response-surface sampler.
//!
//! The two process coordinates are min-max normalized onto [0,1]; any
//! remaining inputs and the target are z-scored. All scalings are fit on
//! the training rows only, and reported errors are inverse-scaled back to
//! degrees Celsius.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use super::loss::{data_loss, total_loss, LossRecord};
use super::residual::network_residual;
use super::{Collocation, PhysicsSpec, PinnTrainConfig};
use crate::autodiff::{adam_step, forward_generic, init_weights, AdamState, MlpNetwork};
use crate::data::{ColumnStats, MinMaxNorm};
use crate::model::{Error, Regressor, Result};

/// Per-input scaling: min-max for the two coordinates, z-score otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputScale {
    MinMax(MinMaxNorm),
    ZScore(ColumnStats),
}

impl InputScale {
    pub fn transform(&self, v: f64) -> f64 {
        match self {
            InputScale::MinMax(m) => m.transform(v),
            InputScale::ZScore(s) => s.transform(v),
        }
    }

    pub fn inverse(&self, t: f64) -> f64 {
        match self {
            InputScale::MinMax(m) => m.inverse(t),
            InputScale::ZScore(s) => s.inverse(t),
        }
    }
}

/// A trained physics-informed network plus everything needed to use it:
/// the input/target scalings, the loss history (entry 0 is the untrained
/// loss, the last entry the final one) and test-set errors in °C.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PinnModel {
    pub network: MlpNetwork,
    pub spec: PhysicsSpec,
    pub config: PinnTrainConfig,
    pub input_scales: Vec<InputScale>,
    pub target_scale: ColumnStats,
    /// Median of each scaled training column; fixes the off-surface
    /// inputs when sampling the response surface.
    pub scaled_medians: Vec<f64>,
    pub history: Vec<LossRecord>,
    pub test_rmse: Option<f64>,
    pub test_mae: Option<f64>,
}

impl PinnModel {
    /// Predicted peak temperature in °C for a raw feature row.
    pub fn predict_celsius(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.input_scales.len() {
            return Err(Error::Data(format!(
                "expected {} features, got {}",
                self.input_scales.len(),
                row.len()
            )));
        }
        let scaled: Vec<f64> = row
            .iter()
            .zip(&self.input_scales)
            .map(|(&v, s)| s.transform(v))
            .collect();
        let out = self.network.forward(&scaled)?;
        Ok(self.target_scale.inverse(out[0]))
    }
}

impl Regressor for PinnModel {
    fn predict_one(&self, row: &[f64]) -> f64 {
        self.predict_celsius(row)
            .expect("row width must match the trained inputs")
    }
}

fn column_median(rows: &[Vec<f64>], j: usize) -> f64 {
    let mut values: Vec<f64> = rows.iter().map(|r| r[j]).collect();
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

fn check_rows(rows: &[Vec<f64>], width: usize, what: &str) -> Result<()> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(Error::Data(format!(
                "{what} row {i} has {} features, expected {width}",
                r.len()
            )));
        }
    }
    Ok(())
}

fn diverged_at(epoch: usize, e: Error) -> Error {
    match e {
        Error::Diverged(msg) => Error::Diverged(format!("epoch {epoch}: {msg}")),
        other => other,
    }
}

/// Residual and data components of the current network, in plain f64.
fn evaluate_components(
    net: &MlpNetwork,
    spec: &PhysicsSpec,
    colloc: &[Vec<f64>],
    rows: &[Vec<f64>],
    targets: &[f64],
) -> Result<(f64, f64)> {
    let mut sq = 0.0;
    for (i, point) in colloc.iter().enumerate() {
        let comps = network_residual(spec, &net.layer_sizes, &net.params, point)?;
        let s: f64 = comps.iter().map(|c| c * c).sum();
        if !s.is_finite() {
            return Err(Error::Diverged(format!(
                "residual at collocation point {i} is not finite"
            )));
        }
        sq += s;
    }
    let physics = sq / colloc.len() as f64;
    let predictions: Vec<f64> = rows
        .iter()
        .map(|r| net.forward(r).map(|o| o[0]))
        .collect::<Result<_>>()?;
    let data = data_loss(&predictions, targets)?;
    Ok((physics, data))
}

/// Trains a physics-informed network with full-batch Adam under a cosine
/// step-size schedule (`learning_rate` is the peak rate).
///
/// Rows are raw feature vectors (same layout for train and test); the
/// residual is evaluated at the collocation points `spec` selects. The
/// returned history has `epochs + 1` records: the loss before any update,
/// then after each one. A non-finite loss aborts with the epoch at which
/// training diverged.
pub fn train_pinn(
    train_x: &[Vec<f64>],
    train_y: &[f64],
    test_x: &[Vec<f64>],
    test_y: &[f64],
    spec: &PhysicsSpec,
    config: &PinnTrainConfig,
) -> Result<PinnModel> {
    if train_x.is_empty() {
        return Err(Error::Data("no training rows".into()));
    }
    if train_x.len() != train_y.len() || test_x.len() != test_y.len() {
        return Err(Error::Data("row/target counts disagree".into()));
    }
    let width = train_x[0].len();
    check_rows(train_x, width, "train")?;
    check_rows(test_x, width, "test")?;
    spec.validate(width)?;
    config.validate(width, spec.equation)?;

    let input_scales: Vec<InputScale> = (0..width)
        .map(|j| {
            let column: Vec<f64> = train_x.iter().map(|r| r[j]).collect();
            if j == spec.coordinate_map.t_index || j == spec.coordinate_map.x_index {
                InputScale::MinMax(MinMaxNorm::fit(&column))
            } else {
                InputScale::ZScore(ColumnStats::fit(&column))
            }
        })
        .collect();
    let target_scale = ColumnStats::fit(train_y);

    let scale_rows = |rows: &[Vec<f64>]| -> Vec<Vec<f64>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(&input_scales)
                    .map(|(&v, s)| s.transform(v))
                    .collect()
            })
            .collect()
    };
    let scaled_train = scale_rows(train_x);
    let scaled_test = scale_rows(test_x);
    let scaled_y: Vec<f64> = train_y.iter().map(|&y| target_scale.transform(y)).collect();
    let scaled_medians: Vec<f64> = (0..width)
        .map(|j| column_median(&scaled_train, j))
        .collect();

    let colloc: Vec<Vec<f64>> = match spec.collocation {
        Collocation::TrainingPoints => scaled_train.clone(),
        Collocation::Grid { m } => {
            let mut points = Vec::with_capacity(m * m);
            for i in 0..m {
                for j in 0..m {
                    let mut row = scaled_medians.clone();
                    row[spec.coordinate_map.x_index] = i as f64 / (m - 1) as f64;
                    row[spec.coordinate_map.t_index] = j as f64 / (m - 1) as f64;
                    points.push(row);
                }
            }
            points
        }
    };

    let mut net = init_weights(&config.architecture, config.seed)?;
    let mut adam = AdamState::new(net.params.len()).with_learning_rate(config.learning_rate);
    let arch = config.architecture.clone();
    let n_train = scaled_train.len() as f64;
    let n_colloc = colloc.len() as f64;
    let mut history = Vec::with_capacity(config.epochs + 1);

    for epoch in 0..config.epochs {
        // Cosine-annealed step size: the configured rate at the start,
        // near zero by the last epoch, so the loss settles instead of
        // bouncing around the optimum.
        let progress = epoch as f64 / config.epochs as f64;
        adam.learning_rate =
            config.learning_rate * 0.5 * (1.0 + (std::f64::consts::PI * progress).cos());
        let parts = Cell::new((0.0, 0.0));
        let outcome = net.parameter_gradient(|tape, params| {
            let mut physics = tape.var(0.0);
            for point in &colloc {
                let inputs: Vec<_> = point.iter().map(|&v| tape.var(v)).collect();
                let comps = network_residual(spec, &arch, params, &inputs)?;
                for comp in comps {
                    physics = physics + comp * comp;
                }
            }
            physics = physics / tape.var(n_colloc);

            let mut data = tape.var(0.0);
            for (row, &y) in scaled_train.iter().zip(&scaled_y) {
                let inputs: Vec<_> = row.iter().map(|&v| tape.var(v)).collect();
                let out = forward_generic(&arch, params, &inputs)?;
                let r = out[0] - tape.var(y);
                data = data + r * r;
            }
            data = data / tape.var(n_train);

            parts.set((physics.v, data.v));
            Ok(tape.var(config.physics_weight) * physics + data)
        });
        let (total, grad) = outcome.map_err(|e| diverged_at(epoch, e))?;
        let (physics, data) = parts.get();
        if !physics.is_finite() || !data.is_finite() {
            return Err(Error::Diverged(format!(
                "epoch {epoch}: loss components are not finite"
            )));
        }
        history.push(LossRecord {
            epoch,
            physics,
            data,
            total,
        });
        adam_step(&mut adam, &mut net.params, &grad)?;
    }

    let (physics, data) = evaluate_components(&net, spec, &colloc, &scaled_train, &scaled_y)
        .map_err(|e| diverged_at(config.epochs, e))?;
    history.push(LossRecord {
        epoch: config.epochs,
        physics,
        data,
        total: total_loss(physics, data, config.physics_weight),
    });

    let (test_rmse, test_mae) = if scaled_test.is_empty() {
        (None, None)
    } else {
        let mut se = 0.0;
        let mut ae = 0.0;
        for (row, &y) in scaled_test.iter().zip(test_y) {
            let out = net.forward(row)?;
            let predicted = target_scale.inverse(out[0]);
            se += (predicted - y) * (predicted - y);
            ae += (predicted - y).abs();
        }
        let m = scaled_test.len() as f64;
        (Some((se / m).sqrt()), Some(ae / m))
    };

    Ok(PinnModel {
        network: net,
        spec: spec.clone(),
        config: config.clone(),
        input_scales,
        target_scale,
        scaled_medians,
        history,
        test_rmse,
        test_mae,
    })
}

/// Predicted temperature sampled on an m×m grid over the normalized
/// coordinate square, other inputs held at their training medians.
#[derive(Clone, Debug, Serialize)]
pub struct ResponseSurface {
    pub m: usize,
    /// `(space coordinate, time coordinate, predicted °C)` in raw units,
    /// space-major order.
    pub rows: Vec<(f64, f64, f64)>,
    /// Mean absolute second difference of the temperature grid along both
    /// axes — a descriptive smoothness statistic, not a pass/fail gate.
    pub roughness: f64,
}

pub fn response_surface(model: &PinnModel, m: usize) -> Result<ResponseSurface> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "response surface needs m >= 2, got {m}"
        )));
    }
    let x_idx = model.spec.coordinate_map.x_index;
    let t_idx = model.spec.coordinate_map.t_index;
    let axis: Vec<f64> = (0..m).map(|i| i as f64 / (m - 1) as f64).collect();

    let mut grid = vec![vec![0.0; m]; m];
    let mut rows = Vec::with_capacity(m * m);
    for (i, &u) in axis.iter().enumerate() {
        for (j, &w) in axis.iter().enumerate() {
            let mut point = model.scaled_medians.clone();
            point[x_idx] = u;
            point[t_idx] = w;
            let out = model.network.forward(&point)?;
            let celsius = model.target_scale.inverse(out[0]);
            grid[i][j] = celsius;
            rows.push((
                model.input_scales[x_idx].inverse(u),
                model.input_scales[t_idx].inverse(w),
                celsius,
            ));
        }
    }

    let mut sum = 0.0;
    let mut count = 0usize;
    for row in &grid {
        for j in 1..m.saturating_sub(1) {
            sum += (row[j + 1] - 2.0 * row[j] + row[j - 1]).abs();
            count += 1;
        }
    }
    for w in grid.windows(3) {
        for ((above, mid), below) in w[0].iter().zip(&w[1]).zip(&w[2]) {
            sum += (below - 2.0 * mid + above).abs();
            count += 1;
        }
    }
    let roughness = if count == 0 { 0.0 } else { sum / count as f64 };
    Ok(ResponseSurface { m, rows, roughness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::Equation;

    /// 20 points on a unit square with u = x − t, which solves the
    /// transport equation at c = 1 exactly.
    fn advection_data() -> (Vec<Vec<f64>>, Vec<f64>) {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..5 {
            for j in 0..4 {
                let xs = i as f64 / 4.0;
                let ts = j as f64 / 3.0;
                x.push(vec![xs, ts]);
                y.push(xs - ts);
            }
        }
        (x, y)
    }

    fn quick_config(arch: Vec<usize>, epochs: usize) -> PinnTrainConfig {
        let mut cfg = PinnTrainConfig::new(arch, 7);
        cfg.epochs = epochs;
        cfg.learning_rate = 0.01;
        cfg
    }

    #[test]
    fn malformed_batches_are_rejected() {
        let spec = PhysicsSpec::new(Equation::Transport);
        let cfg = quick_config(vec![2, 4, 1], 5);
        assert!(train_pinn(&[], &[], &[], &[], &spec, &cfg).is_err());
        let x = vec![vec![0.0, 0.0], vec![1.0]];
        assert!(train_pinn(&x, &[0.0, 1.0], &[], &[], &spec, &cfg).is_err());
        let x = vec![vec![0.0, 0.0]];
        assert!(train_pinn(&x, &[0.0, 1.0], &[], &[], &spec, &cfg).is_err());
    }

    #[test]
    fn transport_training_reduces_the_combined_loss() {
        let (x, y) = advection_data();
        let spec = PhysicsSpec::new(Equation::Transport);
        let cfg = quick_config(vec![2, 8, 8, 1], 300);
        let model = train_pinn(&x, &y, &x, &y, &spec, &cfg).unwrap();

        assert_eq!(model.history.len(), 301);
        let initial = model.history[0].total;
        let finale = model.history.last().unwrap().total;
        assert!(
            finale < 0.5 * initial,
            "loss only moved from {initial} to {finale}"
        );
        for r in &model.history {
            assert!(r.total.is_finite());
            assert_eq!(r.total, cfg.physics_weight * r.physics + r.data);
        }
        // Test errors come back in target units.
        assert!(model.test_rmse.unwrap().is_finite());
        assert!(model.test_mae.unwrap() <= model.test_rmse.unwrap() + 1e-12);
    }

    #[test]
    fn zero_physics_weight_is_plain_regression() {
        let (x, y) = advection_data();
        let spec = PhysicsSpec::new(Equation::Transport);
        let mut cfg = quick_config(vec![2, 8, 1], 200);
        cfg.physics_weight = 0.0;
        let model = train_pinn(&x, &y, &[], &[], &spec, &cfg).unwrap();
        let initial = model.history[0].data;
        let finale = model.history.last().unwrap().data;
        assert!(finale < initial);
        for r in &model.history {
            assert_eq!(r.total, r.data);
        }
        assert!(model.test_rmse.is_none());
    }

    #[test]
    fn training_is_bitwise_deterministic_in_the_seed() {
        let (x, y) = advection_data();
        let spec = PhysicsSpec::new(Equation::Heat);
        let cfg = quick_config(vec![2, 6, 1], 40);
        let a = train_pinn(&x, &y, &x, &y, &spec, &cfg).unwrap();
        let b = train_pinn(&x, &y, &x, &y, &spec, &cfg).unwrap();
        assert_eq!(a.history, b.history);
        assert_eq!(a.network.params, b.network.params);

        let mut other = cfg.clone();
        other.seed = 8;
        let c = train_pinn(&x, &y, &x, &y, &spec, &other).unwrap();
        assert_ne!(a.history, c.history);
    }

    #[test]
    fn runaway_learning_rate_reports_the_epoch() {
        let (x, y) = advection_data();
        let spec = PhysicsSpec::new(Equation::Transport);
        let mut cfg = quick_config(vec![2, 4, 1], 50);
        cfg.learning_rate = 1e160;
        let err = train_pinn(&x, &y, &[], &[], &spec, &cfg).unwrap_err();
        match err {
            Error::Diverged(msg) => assert!(msg.contains("epoch"), "{msg}"),
            other => panic!("expected divergence, got {other}"),
        }
    }

    #[test]
    fn schrodinger_uses_the_real_channel_for_temperature() {
        let (x, y) = advection_data();
        let spec = PhysicsSpec::new(Equation::Schrodinger);
        let cfg = quick_config(vec![2, 6, 2], 30);
        let model = train_pinn(&x, &y, &x, &y, &spec, &cfg).unwrap();
        assert!(model.history.iter().all(|r| r.total.is_finite()));
        assert!(model.test_rmse.unwrap().is_finite());
        // Prediction goes through channel 0 only.
        let p = model.predict_celsius(&x[0]).unwrap();
        let scaled: Vec<f64> = x[0]
            .iter()
            .zip(&model.input_scales)
            .map(|(&v, s)| s.transform(v))
            .collect();
        let out = model.network.forward(&scaled).unwrap();
        assert_eq!(p, model.target_scale.inverse(out[0]));
    }

    #[test]
    fn grid_collocation_covers_the_unit_square() {
        let (x, y) = advection_data();
        let mut spec = PhysicsSpec::new(Equation::Transport);
        spec.collocation = Collocation::Grid { m: 4 };
        let cfg = quick_config(vec![2, 4, 1], 3);
        // Just exercises the path; the residual grid is 16 points.
        let model = train_pinn(&x, &y, &[], &[], &spec, &cfg).unwrap();
        assert!(model.history.iter().all(|r| r.physics.is_finite()));
    }

    #[test]
    fn response_surface_of_a_constant_network_is_flat() {
        let (x, y) = advection_data();
        let spec = PhysicsSpec::new(Equation::Transport);
        let cfg = quick_config(vec![2, 4, 1], 1);
        let mut model = train_pinn(&x, &y, &[], &[], &spec, &cfg).unwrap();
        for p in &mut model.network.params {
            *p = 0.0;
        }
        let surface = response_surface(&model, 5).unwrap();
        assert_eq!(surface.rows.len(), 25);
        let mean = model.target_scale.mean;
        for &(_, _, temp) in &surface.rows {
            assert_eq!(temp, mean);
        }
        assert_eq!(surface.roughness, 0.0);

        assert!(response_surface(&model, 1).is_err());
    }

    #[test]
    fn response_surface_axes_come_back_in_raw_units() {
        // Raw coordinates well outside [0,1] to make inverse scaling visible.
        let x: Vec<Vec<f64>> = (0..12)
            .map(|i| vec![200.0 + 20.0 * (i % 4) as f64, 1.0 + (i / 4) as f64])
            .collect();
        let y: Vec<f64> = x.iter().map(|r| r[0] + 10.0 * r[1]).collect();
        let spec = PhysicsSpec::new(Equation::Heat);
        let cfg = quick_config(vec![2, 4, 1], 2);
        let model = train_pinn(&x, &y, &[], &[], &spec, &cfg).unwrap();
        let surface = response_surface(&model, 3).unwrap();
        let xs: Vec<f64> = surface.rows.iter().map(|r| r.0).collect();
        let ts: Vec<f64> = surface.rows.iter().map(|r| r.1).collect();
        assert_eq!(xs[0], 200.0);
        assert_eq!(*xs.last().unwrap(), 260.0);
        assert_eq!(ts[0], 1.0);
        assert_eq!(*ts.last().unwrap(), 3.0);
    }
}
