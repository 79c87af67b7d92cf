//! Picard iterates `U_k[u0](t)` and their partial sums.
//!
//! `U_1(t) = U(t) u0` and, for `k ≥ 2`,
//! `U_k(t) = -(i/2) Σ_{k1 + k2 = k} N(U_{k1}, U_{k2})(t)` over ordered pairs.
//! The whole hierarchy is evaluated on one composite Gauss–Legendre mesh:
//! in the interaction picture `V_k(τ) = U(-τ) U_k(τ)` the Duhamel integral
//! becomes a plain antiderivative, which the per-panel cumulative matrix
//! gives at every node. Lower iterates are thus available at all nodes
//! without nested quadrature.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{apply_phi, linear_propagate};
use crate::error::{Error, Result};
use crate::quadrature::{QuadratureSpec, TimeMesh};
use crate::spectral::{Overflow, SpectralFunction};

/// Constant of the Picard envelope `‖U_k‖ ≤ (ĉ t)^{k-1} ‖u0‖_{ℱL¹}^{k-1} ‖u0‖`
/// that follows from `|φ| ≤ 1/2` and the prefactor `1/2`.
pub const PROVABLE_C_HAT: f64 = 0.25;

/// Calibrated envelope constant: the largest measured envelope ratio on the
/// training set of the `calibrate_c_hat` example (0.16667, attained by
/// `φ_{0,N}` in `ŵ^{1,∞}` as `t → 0`), rounded up.
pub const DEFAULT_C_HAT: f64 = 0.1667;

#[derive(Debug, Clone, Serialize)]
pub struct PicardResult {
    pub k: usize,
    pub t: f64,
    pub value: SpectralFunction,
    /// ℱL¹ change between the last two quadrature levels; 0 for `k = 1`.
    pub quad_error: f64,
    /// Envelope bound on `Σ_{j>k} ‖U_j(t)‖_{ℱL¹}`, infinite outside the
    /// convergence regime.
    pub tail_bound: f64,
}

/// `Σ_{k>K} (ĉ t)^{k-1} M^{k-1} M = M ρ^K / (1 - ρ)` with `ρ = ĉ t M`.
pub fn tail_bound(m: f64, t: f64, k_max: usize, c_hat: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    let rho = c_hat * t * m;
    if rho >= 1.0 {
        f64::INFINITY
    } else {
        m * rho.powi(k_max as i32) / (1.0 - rho)
    }
}

/// Iterates `U_1, ..., U_kmax` at a single time.
#[derive(Debug, Clone, Serialize)]
pub struct PicardExpansion {
    pub t: f64,
    /// `values[k - 1] = U_k(t)`.
    pub values: Vec<SpectralFunction>,
    pub quad_errors: Vec<f64>,
    /// Panels of the accepted mesh.
    pub panels: usize,
    pub u0_fl1: f64,
}

impl PicardExpansion {
    pub fn compute(u0: &SpectralFunction, kmax: usize, t: f64, quad: &QuadratureSpec) -> Result<Self> {
        quad.validate()?;
        if kmax == 0 {
            return Err(Error::InvalidArgument("Picard index must be >= 1".into()));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("time {t} must be finite and >= 0")));
        }
        let u0_fl1 = u0.l1_norm();
        if kmax == 1 || t == 0.0 || u0.is_zero() {
            let mut values = vec![linear_propagate(u0, t)];
            values.resize(kmax, SpectralFunction::zero(*u0.grid()));
            return Ok(Self {
                t,
                values,
                quad_errors: vec![0.0; kmax],
                panels: 0,
                u0_fl1,
            });
        }
        let mut prev: Option<Vec<SpectralFunction>> = None;
        let mut worst = f64::INFINITY;
        for level in 0..=quad.max_levels {
            let panels = 1usize << level;
            let mesh = TimeMesh::new(t, panels, quad.base_nodes)?;
            let values = hierarchy_on_mesh(u0, kmax, &mesh)?;
            if let Some(p) = &prev {
                let mut errors = vec![0.0; kmax];
                let mut ok = true;
                worst = 0.0;
                for k in 1..kmax {
                    let change = values[k].sub(&p[k])?.l1_norm();
                    errors[k] = change;
                    worst = f64::max(worst, change);
                    ok &= change <= quad.tol * values[k].l1_norm().max(1.0);
                }
                if ok {
                    return Ok(Self {
                        t,
                        values,
                        quad_errors: errors,
                        panels,
                        u0_fl1,
                    });
                }
            }
            prev = Some(values);
        }
        Err(Error::QuadratureNonConvergence {
            change: worst,
            tol: quad.tol,
            panels: 1 << quad.max_levels,
        })
    }

    pub fn kmax(&self) -> usize {
        self.values.len()
    }

    pub fn iterate(&self, k: usize) -> &SpectralFunction {
        &self.values[k - 1]
    }

    pub fn result(&self, k: usize, c_hat: f64) -> PicardResult {
        PicardResult {
            k,
            t: self.t,
            value: self.values[k - 1].clone(),
            quad_error: self.quad_errors[k - 1],
            tail_bound: tail_bound(self.u0_fl1, self.t, k, c_hat),
        }
    }

    /// `Σ_{k ≤ K} U_k(t)`.
    pub fn partial_sum(&self, k_max: usize) -> SpectralFunction {
        let one = Complex64::new(1.0, 0.0);
        let terms: Vec<_> = self.values[..k_max].iter().map(|v| (one, v)).collect();
        SpectralFunction::linear_combination(*self.values[0].grid(), &terms)
    }

    pub fn quad_error_sum(&self, k_max: usize) -> f64 {
        self.quad_errors[..k_max].iter().sum()
    }
}

/// `U_k(mesh.t)` for `k = 1..=kmax` on a fixed mesh.
pub(crate) fn hierarchy_on_mesh(
    u0: &SpectralFunction,
    kmax: usize,
    mesh: &TimeMesh,
) -> Result<Vec<SpectralFunction>> {
    Ok(hierarchy(u0, kmax, mesh, false)?.0)
}

/// Values at `mesh.t` and, with `keep_all`, at every node for every `k`
/// (otherwise only for `k < kmax`).
fn hierarchy(
    u0: &SpectralFunction,
    kmax: usize,
    mesh: &TimeMesh,
    keep_all: bool,
) -> Result<(Vec<SpectralFunction>, Vec<Vec<SpectralFunction>>)> {
    let grid = *u0.grid();
    let times = mesh.times();
    let n = mesh.nodes_per_panel();
    let half_w = 0.5 * mesh.panel_width();
    let minus_half_i = Complex64::new(0.0, -0.5);

    // at_nodes[k - 1][node] = U_k(τ_node)
    let mut at_nodes: Vec<Vec<SpectralFunction>> = Vec::with_capacity(kmax);
    at_nodes.push(times.iter().map(|&tau| linear_propagate(u0, tau)).collect());
    let mut at_t = vec![linear_propagate(u0, mesh.t)];

    for k in 2..=kmax {
        // g(τ) = U(-τ) φ(D) Σ_{k1+k2=k} U_{k1}(τ) U_{k2}(τ)
        let integrand: Vec<SpectralFunction> = times
            .par_iter()
            .enumerate()
            .map(|(node, &tau)| {
                let mut parts = Vec::with_capacity(k / 2);
                for k1 in 1..=k / 2 {
                    let k2 = k - k1;
                    let prod = at_nodes[k1 - 1][node].convolve_with(&at_nodes[k2 - 1][node], Overflow::Error)?;
                    let mult = if k1 == k2 { 1.0 } else { 2.0 };
                    parts.push((Complex64::new(mult, 0.0), prod));
                }
                let refs: Vec<_> = parts.iter().map(|(a, f)| (*a, f)).collect();
                let sum = SpectralFunction::linear_combination(grid, &refs);
                Ok(linear_propagate(&apply_phi(&sum), -tau))
            })
            .collect::<Result<_>>()?;

        let need_nodes = keep_all || k < kmax;
        let mut nodes_k = Vec::with_capacity(if need_nodes { times.len() } else { 0 });
        let mut before = SpectralFunction::zero(grid);
        for p in 0..mesh.panels {
            let panel = &integrand[p * n..(p + 1) * n];
            if need_nodes {
                for i in 0..n {
                    let mut terms: Vec<(Complex64, &SpectralFunction)> = Vec::with_capacity(n + 1);
                    terms.push((minus_half_i, &before));
                    for (j, g) in panel.iter().enumerate() {
                        let a = minus_half_i * half_w * mesh.rule.cumulative[i][j];
                        terms.push((a, g));
                    }
                    let v = SpectralFunction::linear_combination(grid, &terms);
                    nodes_k.push(linear_propagate(&v, times[p * n + i]));
                }
            }
            let mut terms: Vec<(Complex64, &SpectralFunction)> = Vec::with_capacity(n + 1);
            let one = Complex64::new(1.0, 0.0);
            terms.push((one, &before));
            for (j, g) in panel.iter().enumerate() {
                terms.push((Complex64::new(half_w * mesh.rule.weights[j], 0.0), g));
            }
            before = SpectralFunction::linear_combination(grid, &terms);
        }
        at_t.push(linear_propagate(&before.scale(minus_half_i), mesh.t));
        at_nodes.push(nodes_k);
    }
    Ok((at_t, at_nodes))
}

/// Partial sums `Σ_{k ≤ kmax} U_k(τ)` at every node of `mesh`.
pub(crate) fn partial_sums_at_nodes(
    u0: &SpectralFunction,
    kmax: usize,
    mesh: &TimeMesh,
) -> Result<Vec<SpectralFunction>> {
    let (_, nodes) = hierarchy(u0, kmax, mesh, true)?;
    let one = Complex64::new(1.0, 0.0);
    Ok((0..mesh.len())
        .map(|i| {
            let terms: Vec<_> = nodes.iter().map(|per_k| (one, &per_k[i])).collect();
            SpectralFunction::linear_combination(*u0.grid(), &terms)
        })
        .collect())
}

/// `U_k[u0](t)` with its quadrature error.
pub fn picard_iterate(u0: &SpectralFunction, k: usize, t: f64, quad: &QuadratureSpec) -> Result<PicardResult> {
    Ok(PicardExpansion::compute(u0, k, t, quad)?.result(k, DEFAULT_C_HAT))
}

#[derive(Debug, Clone, Serialize)]
pub struct PicardSeries {
    /// `Σ_{k ≤ K} U_k(t)`.
    pub sum: SpectralFunction,
    pub tail_bound: f64,
    /// Sum of the per-iterate quadrature errors.
    pub quad_error: f64,
    /// `ρ = ĉ t ‖u0‖_{ℱL¹}`.
    pub rho: f64,
    pub expansion: PicardExpansion,
}

/// Partial sum to `K` with the geometric tail certificate. Refuses when
/// `ρ = ĉ t ‖u0‖_{ℱL¹} ≥ 1`.
pub fn picard_series(
    u0: &SpectralFunction,
    k_max: usize,
    t: f64,
    quad: &QuadratureSpec,
    c_hat: f64,
) -> Result<PicardSeries> {
    let m = u0.l1_norm();
    let rho = c_hat * t * m;
    if rho >= 1.0 {
        return Err(Error::ConvergenceRegime { rho });
    }
    let expansion = PicardExpansion::compute(u0, k_max, t, quad)?;
    Ok(PicardSeries {
        sum: expansion.partial_sum(k_max),
        tail_bound: tail_bound(m, t, k_max, c_hat),
        quad_error: expansion.quad_error_sum(k_max),
        rho,
        expansion,
    })
}
