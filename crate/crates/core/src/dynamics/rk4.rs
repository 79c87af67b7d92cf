//! Classical four-stage Runge–Kutta on the Galerkin-truncated system
//! `û_t = -i φ(ξ) (û + (û * û)/2)`.

use num_complex::Complex64;
use serde::Serialize;

use super::{apply_phi, product};
use crate::error::{Error, Result};
use crate::spectral::{Overflow, SpectralFunction};

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SpectralFunction>,
    /// Step actually used (`T / steps`, never above the requested one).
    pub dt: f64,
}

impl Trajectory {
    pub fn last(&self) -> &SpectralFunction {
        self.states.last().expect("trajectory holds the initial state")
    }
}

const BLOW_UP: f64 = 1e100;

fn rhs(u: &SpectralFunction) -> Result<SpectralFunction> {
    let uu = product(u, u, Overflow::Truncate)?;
    let half = Complex64::new(0.5, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let inner = SpectralFunction::linear_combination(*u.grid(), &[(one, u), (half, &uu)]);
    Ok(apply_phi(&inner).scale(Complex64::new(0.0, -1.0)))
}

fn step(u: &SpectralFunction, dt: f64) -> Result<SpectralFunction> {
    let g = *u.grid();
    let one = Complex64::new(1.0, 0.0);
    let c = |x: f64| Complex64::new(x, 0.0);
    let k1 = rhs(u)?;
    let k2 = rhs(&SpectralFunction::linear_combination(g, &[(one, u), (c(0.5 * dt), &k1)]))?;
    let k3 = rhs(&SpectralFunction::linear_combination(g, &[(one, u), (c(0.5 * dt), &k2)]))?;
    let k4 = rhs(&SpectralFunction::linear_combination(g, &[(one, u), (c(dt), &k3)]))?;
    Ok(SpectralFunction::linear_combination(
        g,
        &[
            (one, u),
            (c(dt / 6.0), &k1),
            (c(dt / 3.0), &k2),
            (c(dt / 3.0), &k3),
            (c(dt / 6.0), &k4),
        ],
    ))
}

/// Integrates to `t_end`, recording every step.
pub fn integrate_rk4(u0: &SpectralFunction, t_end: f64, dt: f64) -> Result<Trajectory> {
    integrate_rk4_with(u0, t_end, dt, 1)
}

/// Integrates to `t_end` with `steps = ceil(t_end / dt)` equal steps,
/// recording every `stride`-th state and always the last one.
pub fn integrate_rk4_with(u0: &SpectralFunction, t_end: f64, dt: f64, stride: usize) -> Result<Trajectory> {
    if !(dt > 0.0 && dt <= 0.1) {
        return Err(Error::InvalidArgument(format!("rk4 step {dt} must lie in (0, 0.1]")));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidArgument(format!("final time {t_end} must be finite and >= 0")));
    }
    let stride = stride.max(1);
    let steps = ((t_end / dt) * (1.0 - 1e-12)).ceil().max(if t_end > 0.0 { 1.0 } else { 0.0 }) as usize;
    let h = if steps == 0 { dt } else { t_end / steps as f64 };
    let mut times = vec![0.0];
    let mut states = vec![u0.clone()];
    let mut u = u0.clone();
    for n in 1..=steps {
        u = step(&u, h)?;
        let t = if n == steps { t_end } else { n as f64 * h };
        let mag = u.max_abs_coeff();
        if !mag.is_finite() || mag > BLOW_UP {
            return Err(Error::BlowUp { t, magnitude: mag });
        }
        if n % stride == 0 || n == steps {
            times.push(t);
            states.push(u.clone());
        }
    }
    Ok(Trajectory { times, states, dt: h })
}

/// Final state at step `dt` and an estimate of its ℱL¹ error,
/// `(16/15) ‖u_dt - u_{dt/2}‖`.
pub fn rk4_error_estimate(u0: &SpectralFunction, t_end: f64, dt: f64) -> Result<(SpectralFunction, f64)> {
    let coarse = integrate_rk4_with(u0, t_end, dt, usize::MAX)?;
    let fine = integrate_rk4_with(u0, t_end, 0.5 * dt, usize::MAX)?;
    let err = coarse.last().sub(fine.last())?.l1_norm() * 16.0 / 15.0;
    Ok((coarse.last().clone(), err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::energy;
    use crate::grid::FrequencyGrid;

    #[test]
    fn zero_and_mean_states_are_stationary() {
        let g = FrequencyGrid::torus(8).unwrap();
        let z = integrate_rk4(&SpectralFunction::zero(g), 0.5, 0.01).unwrap();
        assert!(z.states.iter().all(|s| s.is_zero()));
        let a = SpectralFunction::delta(g, 0, Complex64::new(0.7, 0.0)).unwrap();
        let tr = integrate_rk4(&a, 0.5, 0.01).unwrap();
        assert!(tr.states.iter().all(|s| s == &a));
        assert_eq!(tr.times.len(), 51);
        assert!((tr.times[50] - 0.5).abs() == 0.0);
    }

    #[test]
    fn refuses_large_steps() {
        let g = FrequencyGrid::torus(8).unwrap();
        assert!(integrate_rk4(&SpectralFunction::zero(g), 1.0, 0.2).is_err());
    }

    #[test]
    fn conserves_energy_and_symmetry() {
        let g = FrequencyGrid::torus(16).unwrap();
        let u0 = SpectralFunction::from_entries(
            g,
            [(-2, Complex64::new(0.1, -0.05)), (-1, Complex64::new(0.2, 0.1)), (0, Complex64::new(0.1, 0.0)),
             (1, Complex64::new(0.2, -0.1)), (2, Complex64::new(0.1, 0.05))],
        )
        .unwrap();
        let tr = integrate_rk4_with(&u0, 1.0, 1e-3, 100).unwrap();
        let e0 = energy(&u0);
        for s in &tr.states {
            assert!((energy(s) - e0).abs() <= 1e-8 * e0);
            assert!(s.hermitian_defect() < 1e-12);
        }
    }
}
