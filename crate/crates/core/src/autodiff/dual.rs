use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::Real;

/// Second-order forward-mode dual number along a single direction.
///
/// Carries the primal value together with the first and second directional
/// derivatives, so one forward pass through an expression yields `f`, `f'`
/// and `f''` with respect to whichever input was seeded with `d = 1`.
/// The components are themselves a [`Real`], which allows nesting over tape
/// variables to differentiate expressions that contain input derivatives.
#[derive(Clone, Copy, Debug)]
pub struct Dual2<T: Real> {
    pub v: T,
    pub d: T,
    pub dd: T,
}

impl<T: Real> Dual2<T> {
    /// A constant: zero first and second derivative.
    pub fn constant(v: T) -> Self {
        let zero = v.lift(0.0);
        Dual2 {
            v,
            d: zero,
            dd: zero,
        }
    }

    /// The variable of differentiation: unit first derivative.
    pub fn variable(v: T) -> Self {
        Dual2 {
            v,
            d: v.lift(1.0),
            dd: v.lift(0.0),
        }
    }
}

impl<T: Real> Add for Dual2<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Dual2 {
            v: self.v + rhs.v,
            d: self.d + rhs.d,
            dd: self.dd + rhs.dd,
        }
    }
}

impl<T: Real> Sub for Dual2<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Dual2 {
            v: self.v - rhs.v,
            d: self.d - rhs.d,
            dd: self.dd - rhs.dd,
        }
    }
}

impl<T: Real> Mul for Dual2<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let two = self.v.lift(2.0);
        Dual2 {
            v: self.v * rhs.v,
            d: self.d * rhs.v + self.v * rhs.d,
            dd: self.dd * rhs.v + two * self.d * rhs.d + self.v * rhs.dd,
        }
    }
}

impl<T: Real> Div for Dual2<T> {
    type Output = Self;

    // From v = q·w: q' = (v' − q·w')/w and q'' = (v'' − 2q'·w' − q·w'')/w.
    fn div(self, rhs: Self) -> Self {
        let two = self.v.lift(2.0);
        let q = self.v / rhs.v;
        let dq = (self.d - q * rhs.d) / rhs.v;
        let ddq = (self.dd - two * dq * rhs.d - q * rhs.dd) / rhs.v;
        Dual2 {
            v: q,
            d: dq,
            dd: ddq,
        }
    }
}

impl<T: Real> Neg for Dual2<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Dual2 {
            v: -self.v,
            d: -self.d,
            dd: -self.dd,
        }
    }
}

/// Chain rule for a univariate map: given f(v), f'(v), f''(v) produce the
/// dual of f ∘ self, with f''·d² + f'·dd as the second component.
impl<T: Real> Dual2<T> {
    fn chain(self, f: T, fp: T, fpp: T) -> Self {
        Dual2 {
            v: f,
            d: fp * self.d,
            dd: fpp * self.d * self.d + fp * self.dd,
        }
    }
}

impl<T: Real> Real for Dual2<T> {
    fn lift(&self, v: f64) -> Self {
        Dual2::constant(self.v.lift(v))
    }

    fn value(&self) -> f64 {
        self.v.value()
    }

    fn tanh(self) -> Self {
        let t = self.v.tanh();
        let fp = self.v.lift(1.0) - t * t;
        let fpp = self.v.lift(-2.0) * t * fp;
        self.chain(t, fp, fpp)
    }

    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    fn sin(self) -> Self {
        let s = self.v.sin();
        let c = self.v.cos();
        self.chain(s, c, -s)
    }

    fn cos(self) -> Self {
        let s = self.v.sin();
        let c = self.v.cos();
        self.chain(c, -s, -c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn polynomial_derivatives_are_exact() {
        // f(x) = x³ − 2x at x = 1.5: f' = 3x² − 2, f'' = 6x.
        let x = Dual2::variable(1.5_f64);
        let two = x.lift(2.0);
        let f = x * x * x - two * x;
        close(f.v, 1.5f64.powi(3) - 3.0, 1e-15);
        close(f.d, 3.0 * 1.5 * 1.5 - 2.0, 1e-15);
        close(f.dd, 9.0, 1e-15);
    }

    #[test]
    fn quotient_rule_matches_the_closed_form() {
        // f(x) = 1/x: f' = −1/x², f'' = 2/x³.
        let x = Dual2::variable(0.8_f64);
        let f = x.lift(1.0) / x;
        close(f.v, 1.25, 1e-15);
        close(f.d, -1.0 / 0.64, 1e-14);
        close(f.dd, 2.0 / 0.512, 1e-13);
    }

    #[test]
    fn transcendental_second_derivatives_match() {
        let x = Dual2::variable(0.37_f64);

        let t = x.tanh();
        let tv = 0.37f64.tanh();
        close(t.d, 1.0 - tv * tv, 1e-15);
        close(t.dd, -2.0 * tv * (1.0 - tv * tv), 1e-15);

        let e = x.exp();
        close(e.dd, 0.37f64.exp(), 1e-15);

        let s = x.sin();
        close(s.d, 0.37f64.cos(), 1e-15);
        close(s.dd, -0.37f64.sin(), 1e-15);

        let c = x.cos();
        close(c.d, -0.37f64.sin(), 1e-15);
        close(c.dd, -0.37f64.cos(), 1e-15);
    }

    #[test]
    fn constants_carry_no_derivative() {
        let x = Dual2::variable(2.0_f64);
        let k = x.lift(5.0);
        let f = k * x + k;
        close(f.v, 15.0, 1e-15);
        close(f.d, 5.0, 1e-15);
        close(f.dd, 0.0, 1e-15);
    }
}
