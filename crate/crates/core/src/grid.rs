//! Discrete frequency domains.
//!
//! A grid is the set of frequencies `xi = j / m` for integer mode indices
//! `|j| <= cutoff * m`. The torus uses `m = 1` (the integers); the line is
//! approximated by a finer lattice with spacing `h = 1 / m`. Keeping `h` the
//! reciprocal of an integer makes every unit block `n + (-1/2, 1/2]` an exact
//! run of mode indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Torus,
    Line,
}

/// Symmetric frequency grid `hZ ∩ [-cutoff, cutoff]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrequencyGrid {
    kind: GridKind,
    cutoff: u64,
    per_unit: u32,
}

/// Default lattice refinement for line grids (`h = 1/8`).
pub const DEFAULT_LINE_PER_UNIT: u32 = 8;

impl FrequencyGrid {
    pub fn torus(cutoff: u64) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidGrid("cutoff must be positive".into()));
        }
        Ok(Self {
            kind: GridKind::Torus,
            cutoff,
            per_unit: 1,
        })
    }

    /// Line grid with spacing `1 / per_unit`.
    pub fn line(cutoff: u64, per_unit: u32) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidGrid("cutoff must be positive".into()));
        }
        if per_unit == 0 {
            return Err(Error::InvalidGrid("per_unit must be positive".into()));
        }
        Ok(Self {
            kind: GridKind::Line,
            cutoff,
            per_unit,
        })
    }

    /// Line grid from a real spacing; `1/h` must be a positive integer.
    pub fn line_with_spacing(cutoff: u64, h: f64) -> Result<Self> {
        if !(h > 0.0 && h <= 1.0) {
            return Err(Error::InvalidGrid(format!("line spacing {h} not in (0, 1]")));
        }
        let inv = 1.0 / h;
        let m = inv.round();
        if (inv - m).abs() > 1e-9 * inv {
            return Err(Error::InvalidGrid(format!(
                "line spacing {h} is not the reciprocal of an integer"
            )));
        }
        Self::line(cutoff, m as u32)
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn per_unit(&self) -> u32 {
        self.per_unit
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.per_unit as f64
    }

    /// Riemann weight attached to each grid point (1 on the torus).
    pub fn weight(&self) -> f64 {
        match self.kind {
            GridKind::Torus => 1.0,
            GridKind::Line => self.spacing(),
        }
    }

    pub fn max_index(&self) -> i64 {
        (self.cutoff * self.per_unit as u64) as i64
    }

    pub fn len(&self) -> usize {
        (2 * self.max_index() + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: i64) -> bool {
        index.abs() <= self.max_index()
    }

    pub fn frequency(&self, index: i64) -> f64 {
        index as f64 / self.per_unit as f64
    }

    /// Mode index of a real frequency, if it lies on the lattice.
    pub fn index_of(&self, xi: f64) -> Option<i64> {
        let scaled = xi * self.per_unit as f64;
        let j = scaled.round();
        if (scaled - j).abs() <= 1e-9 * scaled.abs().max(1.0) {
            Some(j as i64)
        } else {
            None
        }
    }

    /// Unit block `n` with `xi ∈ n + (-1/2, 1/2]`.
    pub fn block_of(&self, index: i64) -> i64 {
        let m = self.per_unit as i64;
        let num = 2 * index - m;
        let den = 2 * m;
        num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
    }

    /// Inclusive mode-index range of unit block `n`.
    pub fn block_range(&self, n: i64) -> (i64, i64) {
        let m = self.per_unit as i64;
        // xi in (n - 1/2, n + 1/2]  <=>  2j in (m(2n-1), m(2n+1)]
        let hi = (m * (2 * n + 1)).div_euclid(2);
        let lo = (m * (2 * n - 1)).div_euclid(2) + 1;
        (lo, hi)
    }

    /// Same kind and spacing with a different cutoff.
    pub fn with_cutoff(&self, cutoff: u64) -> Result<Self> {
        match self.kind {
            GridKind::Torus => Self::torus(cutoff),
            GridKind::Line => Self::line(cutoff, self.per_unit),
        }
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}
