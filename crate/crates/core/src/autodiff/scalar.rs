use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar field the network forward pass is generic over.
///
/// Implementors: plain `f64`, the forward dual [`super::Dual2`] and the
/// reverse-mode tape variable [`super::Var`]. `lift` produces a constant in
/// the same differentiation context as `self` — for `f64` that is just the
/// value, for a tape variable it records a node with zero adjoint flow.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// A constant with value `v` living in the same context as `self`.
    fn lift(&self, v: f64) -> Self;
    /// The underlying primal value.
    fn value(&self) -> f64;
    fn tanh(self) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
}

impl Real for f64 {
    fn lift(&self, v: f64) -> Self {
        v
    }

    fn value(&self) -> f64 {
        *self
    }

    fn tanh(self) -> Self {
        f64::tanh(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn sin(self) -> Self {
        f64::sin(self)
    }

    fn cos(self) -> Self {
        f64::cos(self)
    }
}
