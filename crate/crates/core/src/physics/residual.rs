//! Equation residuals evaluated with exact derivatives.
//!
//! The residual is assembled from any field `u(inputs)` supplied as a
//! closure over dual numbers, so a trained network and a hand-written
//! closed-form solution run through the identical derivative machinery.
//! Two forward passes are made per point — one seeded in the time
//! coordinate, one in the space coordinate — which yields every first and
//! second derivative the four equations need.

use super::{Equation, PhysicsSpec};
use crate::autodiff::{forward_generic, Dual2, Real};
use crate::model::{Error, Result};

/// Residual components of `field` at one point. Real equations return one
/// component; the Schrödinger residual returns its real and imaginary
/// parts. The squared residual magnitude is the sum of squared components.
pub fn field_residual<T, F>(spec: &PhysicsSpec, inputs: &[T], mut field: F) -> Result<Vec<T>>
where
    T: Real,
    F: FnMut(&[Dual2<T>]) -> Result<Vec<Dual2<T>>>,
{
    spec.validate(inputs.len())?;
    let mut pass = |direction: usize| -> Result<Vec<Dual2<T>>> {
        let duals: Vec<Dual2<T>> = inputs
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if i == direction {
                    Dual2::variable(v)
                } else {
                    Dual2::constant(v)
                }
            })
            .collect();
        let out = field(&duals)?;
        let want = spec.equation.output_width();
        if out.len() != want {
            return Err(Error::Data(format!(
                "{} residual needs a field with {want} channel(s), got {}",
                spec.equation.name(),
                out.len()
            )));
        }
        Ok(out)
    };

    let in_t = pass(spec.coordinate_map.t_index)?;
    let in_x = pass(spec.coordinate_map.x_index)?;
    let lift = |v: f64| inputs[spec.coordinate_map.t_index].lift(v);

    Ok(match spec.equation {
        // c·u_t + u_x
        Equation::Transport => vec![lift(spec.c) * in_t[0].d + in_x[0].d],
        // c²·u_tt − u_xx, or u_tt − c²·u_xx in the textbook grouping.
        Equation::Wave => {
            let c2 = lift(spec.c * spec.c);
            if spec.textbook_wave {
                vec![in_t[0].dd - c2 * in_x[0].dd]
            } else {
                vec![c2 * in_t[0].dd - in_x[0].dd]
            }
        }
        // u_t − k·u_xx
        Equation::Heat => vec![in_t[0].d - lift(spec.k) * in_x[0].dd],
        // Ĥψ − iħ·ψ_t for a free particle, Ĥ = −(ħ²/2m)·∂²/∂x², split
        // into real and imaginary parts with ψ = a + i·b:
        //   Re = −(ħ²/2m)·a_xx + ħ·b_t
        //   Im = −(ħ²/2m)·b_xx − ħ·a_t
        Equation::Schrodinger => {
            let kinetic = lift(-spec.hbar * spec.hbar / (2.0 * spec.mass));
            let hbar = lift(spec.hbar);
            vec![
                kinetic * in_x[0].dd + hbar * in_t[1].d,
                kinetic * in_x[1].dd - hbar * in_t[0].d,
            ]
        }
    })
}

/// [`field_residual`] of a network forward pass, generic over the scalar so
/// the same call serves plain evaluation and gradient recording.
pub fn network_residual<T: Real>(
    spec: &PhysicsSpec,
    layer_sizes: &[usize],
    params: &[T],
    inputs: &[T],
) -> Result<Vec<T>> {
    let dual_params: Vec<Dual2<T>> = params.iter().map(|&p| Dual2::constant(p)).collect();
    field_residual(spec, inputs, |duals| {
        forward_generic(layer_sizes, &dual_params, duals)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::CoordinateMap;

    // Feature layout used throughout: inputs = [x, t] with the map
    // (t_index = 1, x_index = 0), matching the process-data convention.
    fn at(
        spec: &PhysicsSpec,
        x: f64,
        t: f64,
        field: impl Fn(Dual2<f64>, Dual2<f64>) -> Vec<Dual2<f64>>,
    ) -> Vec<f64> {
        field_residual(spec, &[x, t], |d| Ok(field(d[0], d[1]))).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn transport_of_pure_time_and_space_ramps() {
        let mut spec = PhysicsSpec::new(Equation::Transport);
        spec.c = 3.0;
        // u = t: residual c·1 + 0 = c.
        let r = at(&spec, 0.4, 0.7, |_x, t| vec![t]);
        assert_eq!(r, vec![3.0]);
        // u = x: residual 0 + 1 = 1.
        let r = at(&spec, 0.4, 0.7, |x, _t| vec![x]);
        assert_eq!(r, vec![1.0]);
    }

    #[test]
    fn wave_residual_annihilates_travelling_and_standing_solutions() {
        let spec = PhysicsSpec::new(Equation::Wave);
        // Any affine field solves the wave equation.
        let r = at(&spec, 0.3, 0.9, |x, t| {
            vec![t.lift(2.5) * t + t.lift(-1.25) * x + t.lift(7.0)]
        });
        close(r[0], 0.0, 1e-15);
        // sin(x)·sin(t) solves it at c = 1.
        let r = at(&spec, 0.3, 0.9, |x, t| vec![x.sin() * t.sin()]);
        close(r[0], 0.0, 1e-15);
    }

    #[test]
    fn wave_groupings_differ_by_the_speed_factor() {
        let mut spec = PhysicsSpec::new(Equation::Wave);
        spec.c = 2.0;
        // u = t²: u_tt = 2, u_xx = 0 → default c²·2 = 8, textbook 2.
        let r = at(&spec, 0.0, 0.5, |_x, t| vec![t * t]);
        close(r[0], 8.0, 1e-15);
        spec.textbook_wave = true;
        let r = at(&spec, 0.0, 0.5, |_x, t| vec![t * t]);
        close(r[0], 2.0, 1e-15);
    }

    #[test]
    fn heat_kernel_mode_has_zero_residual() {
        let mut spec = PhysicsSpec::new(Equation::Heat);
        spec.k = 0.8;
        // u = e^{−kt}·sin x is an exact solution.
        let r = at(&spec, 1.1, 0.6, |x, t| {
            vec![(t.lift(-0.8) * t).exp() * x.sin()]
        });
        close(r[0], 0.0, 1e-15);
        // u = x²: residual 0 − k·2 = −2k.
        let r = at(&spec, 1.1, 0.6, |x, _t| vec![x * x]);
        close(r[0], -1.6, 1e-15);
        // u = t: residual 1.
        let r = at(&spec, 1.1, 0.6, |_x, t| vec![t]);
        close(r[0], 1.0, 1e-15);
    }

    #[test]
    fn constant_wavefunction_has_zero_residual() {
        let spec = PhysicsSpec::new(Equation::Schrodinger);
        let r = at(&spec, 0.2, 0.4, |x, _t| vec![x.lift(1.75), x.lift(-0.5)]);
        assert_eq!(r, vec![0.0, 0.0]);
    }

    #[test]
    fn dispersion_matched_plane_wave_solves_schrodinger() {
        let mut spec = PhysicsSpec::new(Equation::Schrodinger);
        spec.hbar = 0.7;
        spec.mass = 1.3;
        // ψ = e^{i(qx − ωt)} with ħω = ħ²q²/(2m).
        let q = 1.9;
        let omega = spec.hbar * q * q / (2.0 * spec.mass);
        let r = at(&spec, 0.33, 0.81, |x, t| {
            let phase = x.lift(q) * x - t.lift(omega) * t;
            vec![phase.cos(), phase.sin()]
        });
        close(r[0], 0.0, 1e-13);
        close(r[1], 0.0, 1e-13);
    }

    #[test]
    fn static_plane_wave_leaves_the_kinetic_energy() {
        let spec = PhysicsSpec::new(Equation::Schrodinger);
        // ψ = e^{iqx}: |residual| = ħ²q²/(2m).
        let q = 2.4;
        let r = at(&spec, 0.6, 0.1, |x, _t| {
            let phase = x.lift(q) * x;
            vec![phase.cos(), phase.sin()]
        });
        let modulus = (r[0] * r[0] + r[1] * r[1]).sqrt();
        close(modulus, q * q / 2.0, 1e-12);
    }

    #[test]
    fn field_width_must_match_the_equation() {
        let spec = PhysicsSpec::new(Equation::Schrodinger);
        let err = field_residual(&spec, &[0.1, 0.2], |d| Ok(vec![d[0]])).unwrap_err();
        assert!(matches!(err, Error::Data(_)));
        let real = PhysicsSpec::new(Equation::Heat);
        assert!(field_residual(&real, &[0.1, 0.2], |d| Ok(vec![d[0], d[1]])).is_err());
    }

    #[test]
    fn network_and_closed_form_agree_through_the_same_machinery() {
        // A linear network u = 2x + 5t + 1 against the same closed form.
        let mut spec = PhysicsSpec::new(Equation::Transport);
        spec.c = 2.0;
        let arch = [2usize, 1];
        let params = [2.0, 5.0, 1.0];
        let inputs = [0.7, 0.2];
        let from_net = network_residual(&spec, &arch, &params, &inputs).unwrap();
        let from_form = at(&spec, 0.7, 0.2, |x, t| {
            vec![x.lift(2.0) * x + x.lift(5.0) * t + x.lift(1.0)]
        });
        // c·u_t + u_x = 2·5 + 2 = 12.
        assert_eq!(from_net, vec![12.0]);
        assert_eq!(from_net, from_form);
    }

    #[test]
    fn extra_inputs_ride_along_as_constants() {
        // Three inputs [x, t, f]; the residual only sees x and t.
        let mut spec = PhysicsSpec::new(Equation::Transport);
        spec.coordinate_map = CoordinateMap {
            t_index: 1,
            x_index: 0,
        };
        let r = field_residual(&spec, &[0.5, 0.25, 9.0], |d| {
            // u = t + f·x: u_t = 1, u_x = f → residual c + f.
            Ok(vec![d[1] + d[2] * d[0]])
        })
        .unwrap();
        close(r[0], 1.0 + 9.0, 1e-15);
    }
}
