//! A small automatic-differentiation engine: a shared scalar trait over
//! which the network forward pass is written once, a second-order forward
//! dual number for exact input derivatives, a reverse-mode tape for
//! parameter gradients, the multilayer perceptron itself and an Adam
//! optimizer. Nesting the dual over tape variables yields parameter
//! gradients of losses that themselves contain input derivatives.

mod adam;
mod dual;
mod mlp;
mod scalar;
mod tape;

pub use adam::{adam_step, AdamState};
pub use dual::Dual2;
pub use mlp::{forward_generic, init_weights, MlpCheckpoint, MlpNetwork};
pub use scalar::Real;
pub use tape::{gradient, Tape, Var};
