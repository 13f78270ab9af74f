//! Regression, classification and physics-constrained neural models for
//! predicting additive friction stir deposition (AFSD) peak temperature
//! and deposition quality from process parameters.
//!
//! The crate provides three model families over a shared data pipeline:
//!
//! * tree ensembles (`tree`, `ensemble`): CART, random forest, extra
//!   trees, gradient boosting (plain, stochastic, second-order
//!   regularized, ordered/oblivious) and AdaBoost;
//! * margin and instance models (`margin`): SMO-based support vector
//!   regression/classification, logistic regression, k-nearest
//!   neighbours and SGD classification;
//! * physics-constrained networks (`autodiff`, `physics`): a small
//!   reverse/forward automatic-differentiation engine with a multilayer
//!   perceptron, trained on data loss plus squared PDE residuals
//!   (transport, wave, heat, Schrödinger).
//!
//! `data` handles CSV ingestion, splitting, scaling and correlation;
//! `metrics` the evaluation metrics and diagnostic series; `rng` the
//! deterministic per-consumer random streams that make every fit
//! bit-reproducible.

pub mod autodiff;
pub mod data;
pub mod ensemble;
pub mod margin;
pub mod metrics;
pub mod model;
pub mod physics;
pub mod rng;
pub mod tree;

pub use model::{Classifier, Error, Regressor, Result};
