//! Composite Gauss–Legendre rules on `[0, t]` and the time meshes built
//! from them.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quadrature settings shared by every time integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes per panel.
    pub base_nodes: usize,
    /// Convergence threshold on the ℱL¹ change between refinement levels,
    /// relative to `max(1, ‖value‖)`.
    pub tol: f64,
    /// Number of panel doublings attempted before giving up.
    pub max_levels: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            base_nodes: 8,
            tol: 1e-10,
            max_levels: 8,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.base_nodes == 0 || self.base_nodes > 64 {
            return Err(Error::InvalidArgument(format!(
                "quad.base_nodes = {} not in 1..=64",
                self.base_nodes
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!("quad.tol = {} must be positive", self.tol)));
        }
        if self.max_levels == 0 {
            return Err(Error::InvalidArgument("quad.max_levels must be positive".into()));
        }
        Ok(())
    }
}

/// Gauss–Legendre rule on `[-1, 1]` with its cumulative integration matrix.
#[derive(Debug, Clone)]
pub struct PanelRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `cumulative[i][j] = ∫_{-1}^{nodes[i]} ℓ_j(x) dx` for the Lagrange
    /// basis `ℓ_j` on the nodes.
    pub cumulative: Vec<Vec<f64>>,
}

impl PanelRule {
    pub fn new(n: usize) -> Result<Self> {
        let degree = NonZeroUsize::new(n)
            .ok_or_else(|| Error::InvalidArgument("panel rule needs at least one node".into()))?;
        let rule = GaussLegendre::new(degree);
        let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();

        // ℓ_j has degree n-1, so the n-point rule on [-1, x_i] is exact.
        let lagrange = |j: usize, x: f64| -> f64 {
            nodes
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &xk)| (x - xk) / (nodes[j] - xk))
                .product()
        };
        let cumulative = nodes
            .iter()
            .map(|&xi| {
                let half = 0.5 * (xi + 1.0);
                (0..n)
                    .map(|j| {
                        half * nodes
                            .iter()
                            .zip(&weights)
                            .map(|(&y, &w)| w * lagrange(j, -1.0 + half * (y + 1.0)))
                            .sum::<f64>()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            nodes,
            weights,
            cumulative,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Composite rule: `panels` equal panels on `[0, t]`, each carrying a
/// [`PanelRule`]. Node order is increasing in time.
#[derive(Debug, Clone)]
pub struct TimeMesh {
    pub t: f64,
    pub panels: usize,
    pub rule: PanelRule,
}

impl TimeMesh {
    pub fn new(t: f64, panels: usize, nodes_per_panel: usize) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("time {t} must be finite and >= 0")));
        }
        if panels == 0 {
            return Err(Error::InvalidArgument("mesh needs at least one panel".into()));
        }
        Ok(Self {
            t,
            panels,
            rule: PanelRule::new(nodes_per_panel)?,
        })
    }

    pub fn panel_width(&self) -> f64 {
        self.t / self.panels as f64
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.rule.len()
    }

    pub fn len(&self) -> usize {
        self.panels * self.rule.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Time of node `i` in panel `p`.
    pub fn time(&self, p: usize, i: usize) -> f64 {
        let w = self.panel_width();
        p as f64 * w + 0.5 * w * (self.rule.nodes[i] + 1.0)
    }

    /// All node times in order.
    pub fn times(&self) -> Vec<f64> {
        (0..self.panels)
            .flat_map(|p| (0..self.rule.len()).map(move |i| (p, i)))
            .map(|(p, i)| self.time(p, i))
            .collect()
    }

    /// Weight of each node in the full-interval rule, in node order.
    pub fn weights(&self) -> Vec<f64> {
        let half = 0.5 * self.panel_width();
        (0..self.panels)
            .flat_map(|_| self.rule.weights.iter().map(move |w| w * half))
            .collect()
    }

    /// `∫_0^t f` for scalar `f`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.times()
            .into_iter()
            .zip(self.weights())
            .map(|(x, w)| w * f(x))
            .sum()
    }
}
