//! BBM evolution in multiplier form, `u_t = -i φ(D)(u + u²/2)`.

mod fixed_point;
mod picard;
mod rk4;

pub use fixed_point::{fixed_point_solve, fixed_point_solve_with, FixedPointOptions, FixedPointResult};
pub(crate) use picard::partial_sums_at_nodes;
pub use picard::{
    picard_iterate, picard_series, tail_bound, PicardExpansion, PicardResult, PicardSeries,
    DEFAULT_C_HAT, PROVABLE_C_HAT,
};
pub use rk4::{integrate_rk4, integrate_rk4_with, rk4_error_estimate, Trajectory};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{QuadratureSpec, TimeMesh};
use crate::spectral::{Overflow, SpectralFunction};

/// `φ(ξ) = ξ / (1 + ξ²)`; odd, with `|φ| ≤ 1/2`.
pub fn phi(xi: f64) -> f64 {
    xi / (1.0 + xi * xi)
}

/// `U(t) f = F^{-1}(e^{-itφ} f^)`, the flow of `i u_t = φ(D) u`.
///
/// The sign matters only for agreement with the full equation; every norm
/// used here sees `|e^{±itφ}| = 1`.
pub fn linear_propagate(f: &SpectralFunction, t: f64) -> SpectralFunction {
    if t == 0.0 {
        return f.clone();
    }
    f.apply_multiplier(|xi| Complex64::from_polar(1.0, -t * phi(xi)))
}

/// `φ(D) f`.
pub fn apply_phi(f: &SpectralFunction) -> SpectralFunction {
    f.apply_real_multiplier(phi)
}

/// `E(u) = Σ (1 + ξ²) |û(ξ)|²` (times `h` on the line); conserved by real
/// solutions and by their Galerkin truncations.
pub fn energy(f: &SpectralFunction) -> f64 {
    let g = f.grid();
    g.weight()
        * f.entries()
            .iter()
            .map(|&(j, c)| (1.0 + g.frequency(j).powi(2)) * c.norm_sqr())
            .sum::<f64>()
}

/// Entry count above which products go through the FFT route.
const FFT_THRESHOLD: usize = 96;

/// `u v` (the convolution of the coefficients), switching to FFT convolution for dense operands.
pub fn product(a: &SpectralFunction, b: &SpectralFunction, overflow: Overflow) -> Result<SpectralFunction> {
    if a.nnz().min(b.nnz()) > FFT_THRESHOLD {
        a.convolve_fft(b, overflow)
    } else {
        a.convolve_with(b, overflow)
    }
}

/// `N(u, v)(t) = ∫_0^t U(t - τ) φ(D)(u v)(τ) dτ` by composite Gauss–Legendre
/// quadrature, doubling the panel count until the ℱL¹ change falls below
/// `quad.tol * max(1, ‖N‖)`. Returns the value and the last change.
pub fn duhamel<U, V>(u: U, v: V, t: f64, quad: &QuadratureSpec) -> Result<(SpectralFunction, f64)>
where
    U: Fn(f64) -> SpectralFunction,
    V: Fn(f64) -> SpectralFunction,
{
    quad.validate()?;
    let probe = u(0.0);
    let grid = *probe.grid();
    if t == 0.0 {
        return Ok((SpectralFunction::zero(grid), 0.0));
    }
    let mut prev: Option<SpectralFunction> = None;
    let mut change = f64::INFINITY;
    for level in 0..=quad.max_levels {
        let mesh = TimeMesh::new(t, 1 << level, quad.base_nodes)?;
        let times = mesh.times();
        let weights = mesh.weights();
        let mut terms = Vec::with_capacity(times.len());
        for &tau in &times {
            let uv = u(tau).convolve(&v(tau))?;
            terms.push(linear_propagate(&apply_phi(&uv), t - tau));
        }
        let refs: Vec<(Complex64, &SpectralFunction)> = weights
            .iter()
            .zip(&terms)
            .map(|(&w, f)| (Complex64::new(w, 0.0), f))
            .collect();
        let value = SpectralFunction::linear_combination(grid, &refs);
        if let Some(p) = &prev {
            change = value.sub(p)?.l1_norm();
            if change <= quad.tol * value.l1_norm().max(1.0) {
                return Ok((value, change));
            }
        }
        prev = Some(value);
    }
    Err(Error::QuadratureNonConvergence {
        change,
        tol: quad.tol,
        panels: 1 << quad.max_levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::FrequencyGrid;
    use crate::spaces::{space_norm, SpaceSpec};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.0), 0.0);
        assert_eq!(phi(1.0), 0.5);
        assert_eq!(phi(-2.0), -0.4);
        for k in -200..200 {
            let x = k as f64 * 0.037;
            assert!(phi(x).abs() <= 0.5);
            assert_eq!(phi(-x), -phi(x));
        }
    }

    #[test]
    fn propagator_examples() {
        let g = FrequencyGrid::torus(4).unwrap();
        let d1 = SpectralFunction::delta(g, 1, c(1.0)).unwrap();
        assert_eq!(linear_propagate(&d1, 0.0), d1);
        let z = linear_propagate(&d1, 2.0).coeff(1);
        assert!((z - Complex64::from_polar(1.0, -1.0)).norm() < 1e-15);
        let f = SpectralFunction::from_fn(g, |xi| Complex64::new(xi, 1.0 - xi * xi)).unwrap();
        let spec = SpaceSpec::fourier_amalgam(2.0, 1.0, -0.5);
        let a = space_norm(&f, &spec).unwrap();
        let b = space_norm(&linear_propagate(&f, 3.7), &spec).unwrap();
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn duhamel_of_zero_and_mean_mode() {
        let g = FrequencyGrid::torus(8).unwrap();
        let q = QuadratureSpec::default();
        let zero = SpectralFunction::zero(g);
        let (v, e) = duhamel(|_| zero.clone(), |_| zero.clone(), 0.5, &q).unwrap();
        assert!(v.is_zero() && e == 0.0);
        let d0 = SpectralFunction::delta(g, 0, c(1.0)).unwrap();
        let u = |tau: f64| linear_propagate(&d0, tau);
        let (v, _) = duhamel(u, u, 0.5, &q).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn duhamel_matches_closed_form_for_two_modes() {
        // u = v = U(τ)δ_1: N(t)(2) = φ(2) ∫ e^{-i(t-τ)φ(2)} e^{-2iτφ(1)} dτ
        let g = FrequencyGrid::torus(8).unwrap();
        let d1 = SpectralFunction::delta(g, 1, c(1.0)).unwrap();
        let u = |tau: f64| linear_propagate(&d1, tau);
        let t = 0.8;
        let (v, err) = duhamel(u, u, t, &QuadratureSpec::default()).unwrap();
        let a = 2.0 * phi(1.0) - phi(2.0);
        let exact = Complex64::from_polar(phi(2.0), -t * phi(2.0))
            * (Complex64::new(0.0, -a * t).exp() - 1.0)
            / Complex64::new(0.0, -a);
        assert!((v.coeff(2) - exact).norm() < 1e-13);
        assert!(err <= 1e-10);
    }
}
