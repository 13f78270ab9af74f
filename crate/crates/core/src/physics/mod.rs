//! Physics-informed neural models: a transport / wave / heat / Schrödinger
//! residual evaluated through the automatic-differentiation engine, a
//! composite loss that mixes the mean squared residual with a data term,
//! full-batch Adam training, and a response-surface sampler over the two
//! process coordinates.

mod loss;
mod residual;
mod train;

pub use loss::{data_loss, total_loss, LossRecord};
pub use residual::{field_residual, network_residual};
pub use train::{response_surface, train_pinn, InputScale, PinnModel, ResponseSurface};

use serde::{Deserialize, Serialize};

use crate::model::{Error, Result};

/// Which governing equation the residual penalizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    Transport,
    Wave,
    Heat,
    Schrodinger,
}

impl Equation {
    /// Network output channels the residual needs: the Schrödinger field
    /// is complex and uses two real channels, everything else one.
    pub fn output_width(self) -> usize {
        match self {
            Equation::Schrodinger => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Equation::Transport => "transport",
            Equation::Wave => "wave",
            Equation::Heat => "heat",
            Equation::Schrodinger => "schrodinger",
        }
    }
}

/// Which input feature plays time and which plays space. The default
/// matches the feature order `[rotational rate, traverse speed, feed rate]`:
/// traverse speed is time-like, rotational rate space-like.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateMap {
    pub t_index: usize,
    pub x_index: usize,
}

impl Default for CoordinateMap {
    fn default() -> Self {
        CoordinateMap {
            t_index: 1,
            x_index: 0,
        }
    }
}

/// Where the residual is evaluated: at the training inputs themselves
/// (the default) or on an m×m grid over the normalized coordinate square.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Collocation {
    #[default]
    TrainingPoints,
    Grid {
        m: usize,
    },
}

fn one() -> f64 {
    1.0
}

/// A governing equation with its coefficients and evaluation geometry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhysicsSpec {
    pub equation: Equation,
    /// Wave/transport speed.
    #[serde(default = "one")]
    pub c: f64,
    /// Thermal diffusivity.
    #[serde(default = "one")]
    pub k: f64,
    /// Reduced Planck constant (natural units by default).
    #[serde(default = "one")]
    pub hbar: f64,
    /// Particle mass (natural units by default).
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default)]
    pub coordinate_map: CoordinateMap,
    #[serde(default)]
    pub collocation: Collocation,
    /// The wave residual defaults to c²·u_tt − u_xx; this flag switches to
    /// the textbook grouping u_tt − c²·u_xx instead.
    #[serde(default)]
    pub textbook_wave: bool,
}

impl PhysicsSpec {
    pub fn new(equation: Equation) -> Self {
        PhysicsSpec {
            equation,
            c: 1.0,
            k: 1.0,
            hbar: 1.0,
            mass: 1.0,
            coordinate_map: CoordinateMap::default(),
            collocation: Collocation::default(),
            textbook_wave: false,
        }
    }

    /// Checks coefficients and the coordinate map against the input width.
    pub fn validate(&self, n_inputs: usize) -> Result<()> {
        let CoordinateMap { t_index, x_index } = self.coordinate_map;
        if t_index == x_index {
            return Err(Error::InvalidParameter(
                "time and space must map to two distinct features".into(),
            ));
        }
        if t_index >= n_inputs || x_index >= n_inputs {
            return Err(Error::InvalidParameter(format!(
                "coordinate map (t={t_index}, x={x_index}) out of range for {n_inputs} inputs"
            )));
        }
        match self.equation {
            Equation::Transport | Equation::Wave => {
                if self.c == 0.0 || !self.c.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "speed c must be finite and nonzero, got {}",
                        self.c
                    )));
                }
            }
            Equation::Heat => {
                if !(self.k > 0.0 && self.k.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "diffusivity k must be positive, got {}",
                        self.k
                    )));
                }
            }
            Equation::Schrodinger => {
                if !(self.hbar > 0.0 && self.hbar.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "hbar must be positive, got {}",
                        self.hbar
                    )));
                }
                if !(self.mass > 0.0 && self.mass.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "mass must be positive, got {}",
                        self.mass
                    )));
                }
            }
        }
        if let Collocation::Grid { m } = self.collocation {
            if m < 2 {
                return Err(Error::InvalidParameter(format!(
                    "collocation grid needs m >= 2, got {m}"
                )));
            }
        }
        Ok(())
    }
}

/// Hyperparameters for one physics-informed training run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PinnTrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    /// Multiplier on the mean squared residual; zero reduces training to a
    /// plain regression on the data term.
    #[serde(default = "one")]
    pub physics_weight: f64,
    pub seed: u64,
    /// Layer widths, inputs first. The output width must match the
    /// equation (two channels for the Schrödinger field, one otherwise).
    pub architecture: Vec<usize>,
}

impl PinnTrainConfig {
    pub fn new(architecture: Vec<usize>, seed: u64) -> Self {
        PinnTrainConfig {
            epochs: 2000,
            learning_rate: 5e-3,
            physics_weight: 1.0,
            seed,
            architecture,
        }
    }

    pub fn validate(&self, n_inputs: usize, equation: Equation) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::InvalidParameter("epochs must be at least 1".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(self.physics_weight >= 0.0 && self.physics_weight.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "physics weight must be nonnegative, got {}",
                self.physics_weight
            )));
        }
        match self.architecture.first() {
            Some(&w) if w == n_inputs => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "architecture must start with the input width {n_inputs}, got {:?}",
                    self.architecture
                )));
            }
        }
        let want = equation.output_width();
        match self.architecture.last() {
            Some(&w) if w == want => Ok(()),
            _ => Err(Error::InvalidParameter(format!(
                "{} residual needs {want} output channel(s), architecture ends with {:?}",
                equation.name(),
                self.architecture.last()
            ))),
        }
    }
}
