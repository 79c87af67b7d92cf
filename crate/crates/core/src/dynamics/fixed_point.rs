//! Fixed point of `Ψ(u)(t) = U(t) u0 - (i/2) N(u, u)(t)` on a time mesh.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{apply_phi, linear_propagate, product};
use crate::error::{Error, Result};
use crate::quadrature::TimeMesh;
use crate::spectral::{Overflow, SpectralFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPointOptions {
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Stop once successive iterates differ by less than this in ℱL¹
    /// (sup over the mesh).
    pub tol: f64,
    /// Also solve on a mesh with twice the panels and report the change.
    pub estimate_quadrature: bool,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        Self {
            panels: 8,
            nodes_per_panel: 8,
            tol: 1e-13,
            estimate_quadrature: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointResult {
    /// `u(T)`.
    pub value: SpectralFunction,
    pub iterations: usize,
    pub converged: bool,
    /// Successive distances `sup_t ‖Ψ^{j+1} - Ψ^j‖_{ℱL¹}`.
    pub distances: Vec<f64>,
    /// Largest ratio of consecutive distances.
    pub contraction_ratio: f64,
    /// Largest `‖u(t)‖_{ℱL¹}` over the mesh at the last iterate.
    pub sup_norm: f64,
    /// ℱL¹ change of `u(T)` when the panel count doubles (0 if not estimated).
    pub quad_error: f64,
}

impl FixedPointResult {
    /// Error bound `d_last · ratio / (1 - ratio)` plus the quadrature change.
    pub fn certificate(&self) -> f64 {
        let d = self.distances.last().copied().unwrap_or(0.0);
        let r = self.contraction_ratio.min(0.999);
        d * r / (1.0 - r) + self.quad_error
    }
}

/// Solves with default options, allowing up to `n_iter` applications of `Ψ`.
pub fn fixed_point_solve(u0: &SpectralFunction, t_end: f64, n_iter: usize) -> Result<FixedPointResult> {
    fixed_point_solve_with(u0, t_end, n_iter, &FixedPointOptions::default())
}

pub fn fixed_point_solve_with(
    u0: &SpectralFunction,
    t_end: f64,
    n_iter: usize,
    opts: &FixedPointOptions,
) -> Result<FixedPointResult> {
    let mut res = solve_on_mesh(u0, t_end, n_iter, opts, opts.panels)?;
    if opts.estimate_quadrature && t_end > 0.0 && !u0.is_zero() {
        let fine = solve_on_mesh(u0, t_end, n_iter, opts, 2 * opts.panels)?;
        res.quad_error = fine.value.sub(&res.value)?.l1_norm();
    }
    Ok(res)
}

fn solve_on_mesh(
    u0: &SpectralFunction,
    t_end: f64,
    n_iter: usize,
    opts: &FixedPointOptions,
    panels: usize,
) -> Result<FixedPointResult> {
    let grid = *u0.grid();
    let mesh = TimeMesh::new(t_end, panels, opts.nodes_per_panel)?;
    let times = mesh.times();
    let n = mesh.nodes_per_panel();
    let half_w = 0.5 * mesh.panel_width();
    let mhi = Complex64::new(0.0, -0.5);

    // Interaction picture: w(τ) = U(-τ) u(τ); the free part is u0 itself.
    let free: Vec<SpectralFunction> = times.iter().map(|&t| linear_propagate(u0, t)).collect();
    let mut u_nodes = free.clone();
    let mut u_end = linear_propagate(u0, t_end);
    let mut distances = Vec::new();
    let mut ratio: f64 = 0.0;
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..n_iter {
        iterations += 1;
        let integrand: Vec<SpectralFunction> = u_nodes
            .par_iter()
            .zip(times.par_iter())
            .map(|(u, &tau)| Ok(linear_propagate(&apply_phi(&product(u, u, Overflow::Truncate)?), -tau)))
            .collect::<Result<_>>()?;
        let mut next_nodes = Vec::with_capacity(times.len());
        let mut before = SpectralFunction::zero(grid);
        for p in 0..mesh.panels {
            let panel = &integrand[p * n..(p + 1) * n];
            for i in 0..n {
                let mut terms = Vec::with_capacity(n + 1);
                terms.push((Complex64::new(1.0, 0.0), &before));
                for (j, g) in panel.iter().enumerate() {
                    terms.push((Complex64::new(half_w * mesh.rule.cumulative[i][j], 0.0), g));
                }
                let integral = SpectralFunction::linear_combination(grid, &terms);
                let node = p * n + i;
                let duh = linear_propagate(&integral, times[node]).scale(mhi);
                next_nodes.push(free[node].add(&duh)?);
            }
            let mut terms = Vec::with_capacity(n + 1);
            terms.push((Complex64::new(1.0, 0.0), &before));
            for (j, g) in panel.iter().enumerate() {
                terms.push((Complex64::new(half_w * mesh.rule.weights[j], 0.0), g));
            }
            before = SpectralFunction::linear_combination(grid, &terms);
        }
        let next_end = linear_propagate(u0, t_end).add(&linear_propagate(&before, t_end).scale(mhi))?;

        let mut d = next_end.sub(&u_end)?.l1_norm();
        for (a, b) in next_nodes.iter().zip(&u_nodes) {
            d = d.max(a.sub(b)?.l1_norm());
        }
        if let Some(&prev) = distances.last() {
            if prev > 0.0 && d > 0.0 {
                ratio = ratio.max(d / prev);
            }
        }
        distances.push(d);
        u_nodes = next_nodes;
        u_end = next_end;
        if ratio >= 1.0 {
            return Err(Error::NonContraction { ratio });
        }
        if d < opts.tol {
            converged = true;
            break;
        }
    }
    let sup_norm = u_nodes
        .iter()
        .map(|u| u.l1_norm())
        .fold(u_end.l1_norm(), f64::max);
    Ok(FixedPointResult {
        value: u_end,
        iterations,
        converged,
        distances,
        contraction_ratio: ratio,
        sup_norm,
        quad_error: 0.0,
    })
}
