//! Functions represented by their Fourier coefficients on a [`FrequencyGrid`].
//!
//! Coefficients are stored sparsely as a sorted list of `(mode index, value)`
//! pairs holding only nonzero values, so the support of every function is
//! known exactly. Picard iterates of band-limited data live on a handful of
//! short clusters, and convolution runs directly over those clusters.
//!
//! Normalization: `f(x) = sum_j c_j exp(i xi_j x)` with no `2π` factors. On a
//! line grid, sums over frequencies carry the Riemann weight `h`.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;

/// What to do when a convolution reaches past the grid cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overflow {
    /// Refuse with [`Error::SupportOverflow`].
    Error,
    /// Drop the modes beyond the cutoff (Galerkin truncation).
    Truncate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralFunction {
    grid: FrequencyGrid,
    entries: Vec<(i64, Complex64)>,
}

impl SpectralFunction {
    pub fn zero(grid: FrequencyGrid) -> Self {
        Self {
            grid,
            entries: Vec::new(),
        }
    }

    /// Builds a function from `(index, value)` pairs. Repeated indices are
    /// summed; exact zeros are dropped.
    pub fn from_entries<I>(grid: FrequencyGrid, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut raw: Vec<(i64, Complex64)> = entries.into_iter().collect();
        for &(j, c) in &raw {
            if !grid.contains(j) {
                return Err(Error::OutOfGrid {
                    index: j,
                    max_index: grid.max_index(),
                });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite(j));
            }
        }
        raw.sort_by_key(|e| e.0);
        Ok(Self {
            grid,
            entries: merge_sorted(raw),
        })
    }

    /// Samples `value(xi)` at every grid frequency; intended for small grids.
    pub fn from_fn<F>(grid: FrequencyGrid, mut value: F) -> Result<Self>
    where
        F: FnMut(f64) -> Complex64,
    {
        let m = grid.max_index();
        Self::from_entries(grid, (-m..=m).map(|j| (j, value(grid.frequency(j)))))
    }

    pub fn delta(grid: FrequencyGrid, index: i64, value: Complex64) -> Result<Self> {
        Self::from_entries(grid, [(index, value)])
    }

    /// `value` on every grid frequency in the closed interval `[a, b]`.
    pub fn interval_indicator(grid: FrequencyGrid, a: f64, b: f64, value: f64) -> Result<Self> {
        let lo = (a * grid.per_unit() as f64 - 1e-9).ceil() as i64;
        let hi = (b * grid.per_unit() as f64 + 1e-9).floor() as i64;
        Self::from_entries(grid, (lo..=hi).map(|j| (j, Complex64::new(value, 0.0))))
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    /// Nonzero coefficients, sorted by mode index.
    pub fn entries(&self) -> &[(i64, Complex64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, index: i64) -> Complex64 {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Coefficient at a real frequency (zero off the lattice).
    pub fn coeff_at(&self, xi: f64) -> Complex64 {
        self.grid
            .index_of(xi)
            .map(|j| self.coeff(j))
            .unwrap_or_default()
    }

    /// Inclusive index range outside which every coefficient is zero.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((self.entries.first()?.0, self.entries.last()?.0))
    }

    /// Largest `|xi|` carrying a nonzero coefficient.
    pub fn max_abs_frequency(&self) -> f64 {
        self.support()
            .map(|(lo, hi)| self.grid.frequency(lo.abs().max(hi.abs())))
            .unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.entries.iter().map(|e| e.1.norm()).fold(0.0, f64::max)
    }

    /// Re-expresses the function on a grid of the same kind and spacing.
    pub fn regrid(&self, grid: FrequencyGrid) -> Result<Self> {
        if grid.kind() != self.grid.kind() || grid.per_unit() != self.grid.per_unit() {
            return Err(Error::GridMismatch(format!(
                "cannot regrid {:?} onto {grid:?}",
                self.grid
            )));
        }
        Self::from_entries(grid, self.entries.iter().copied())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map_entries(|_, c| c * factor)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self::linear_combination(
            self.grid,
            &[(Complex64::new(1.0, 0.0), self), (Complex64::new(1.0, 0.0), other)],
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self::linear_combination(
            self.grid,
            &[(Complex64::new(1.0, 0.0), self), (Complex64::new(-1.0, 0.0), other)],
        ))
    }

    /// `sum_i a_i f_i` for functions sharing `grid`.
    pub fn linear_combination(grid: FrequencyGrid, terms: &[(Complex64, &Self)]) -> Self {
        let mut raw = Vec::with_capacity(terms.iter().map(|t| t.1.nnz()).sum());
        for &(a, f) in terms {
            debug_assert_eq!(f.grid, grid);
            raw.extend(f.entries.iter().map(|&(j, c)| (j, a * c)));
        }
        raw.sort_by_key(|e| e.0);
        Self {
            grid,
            entries: merge_sorted(raw),
        }
    }

    /// Pointwise map over the nonzero coefficients; `f(xi, c)`.
    pub fn map_entries<F>(&self, mut f: F) -> Self
    where
        F: FnMut(f64, Complex64) -> Complex64,
    {
        let entries = self
            .entries
            .iter()
            .map(|&(j, c)| (j, f(self.grid.frequency(j), c)))
            .filter(|e| e.1 != Complex64::new(0.0, 0.0))
            .collect();
        Self {
            grid: self.grid,
            entries,
        }
    }

    /// Fourier multiplier: `m(xi) * f^(xi)`.
    pub fn apply_multiplier<M>(&self, mut m: M) -> Self
    where
        M: FnMut(f64) -> Complex64,
    {
        self.map_entries(|xi, c| m(xi) * c)
    }

    /// Real-valued multiplier variant.
    pub fn apply_real_multiplier<M>(&self, mut m: M) -> Self
    where
        M: FnMut(f64) -> f64,
    {
        self.map_entries(|xi, c| c * m(xi))
    }

    /// Measure of `{xi : |c(xi)| > threshold}`: a count on the torus,
    /// count times `h` on the line.
    pub fn support_measure(&self, threshold: f64) -> f64 {
        let count = self
            .entries
            .iter()
            .filter(|e| e.1.norm() > threshold)
            .count();
        count as f64 * self.grid.weight()
    }

    /// Largest violation of `c(-xi) = conj(c(xi))`.
    pub fn hermitian_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(j, c)| (self.coeff(-j) - c.conj()).norm())
            .fold(0.0, f64::max)
    }

    /// `sum |c| * h`: the Wiener-algebra norm.
    pub fn l1_norm(&self) -> f64 {
        self.grid.weight() * self.entries.iter().fold(0.0, |a, e| a + e.1.norm())
    }

    /// `(sum |c|^2 * h)^(1/2)`.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.weight() * self.entries.iter().fold(0.0, |a, e| a + e.1.norm_sqr())).sqrt()
    }

    /// Discrete convolution, refusing to overflow the grid.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.convolve_with(other, Overflow::Error)
    }

    /// `(f * g)(xi) = sum_eta f(eta) g(xi - eta)`, times `h` on the line.
    /// Runs over the nonzero coefficients only.
    pub fn convolve_with(&self, other: &Self, overflow: Overflow) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.grid));
        }
        let max = self.grid.max_index();
        let (flo, fhi) = self.support().unwrap();
        let (glo, ghi) = other.support().unwrap();
        let reach = (flo + glo).abs().max((fhi + ghi).abs());
        if reach > max && overflow == Overflow::Error {
            return Err(Error::SupportOverflow {
                needed: reach,
                max_index: max,
            });
        }
        let w = self.grid.weight();
        let mut raw = Vec::with_capacity(self.nnz() * other.nnz());
        for &(a, ca) in &self.entries {
            for &(b, cb) in &other.entries {
                let j = a + b;
                if j.abs() <= max {
                    raw.push((j, ca * cb));
                }
            }
        }
        raw.sort_by_key(|e| e.0);
        let mut entries = merge_sorted(raw);
        if w != 1.0 {
            for e in &mut entries {
                e.1 *= w;
            }
        }
        Ok(Self {
            grid: self.grid,
            entries,
        })
    }

    /// Convolution through zero-padded FFTs. Exact up to rounding; suited to
    /// dense data filling most of the grid. The result carries rounding-level
    /// values wherever the padded product is nonzero.
    pub fn convolve_fft(&self, other: &Self, overflow: Overflow) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.grid));
        }
        let max = self.grid.max_index();
        let (flo, fhi) = self.support().unwrap();
        let (glo, ghi) = other.support().unwrap();
        let (lo, hi) = (flo + glo, fhi + ghi);
        if lo.abs().max(hi.abs()) > max && overflow == Overflow::Error {
            return Err(Error::SupportOverflow {
                needed: lo.abs().max(hi.abs()),
                max_index: max,
            });
        }
        let span = ((fhi - flo) + (ghi - glo) + 1) as usize;
        let n = span.next_power_of_two();
        let mut a = vec![Complex64::new(0.0, 0.0); n];
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        for &(j, c) in &self.entries {
            a[(j - flo) as usize] = c;
        }
        for &(j, c) in &other.entries {
            b[(j - glo) as usize] = c;
        }
        let mut planner = FftPlanner::<f64>::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        fwd.process(&mut a);
        fwd.process(&mut b);
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= *y;
        }
        inv.process(&mut a);
        let scale = self.grid.weight() / n as f64;
        let entries = (0..span)
            .map(|k| (lo + k as i64, a[k] * scale))
            .filter(|&(j, c)| j.abs() <= max && c != Complex64::new(0.0, 0.0))
            .collect();
        Ok(Self {
            grid: self.grid,
            entries,
        })
    }

    /// Samples `f` at `n_samples` equispaced points of its period
    /// `[0, 2π/h)`. Refuses fewer than twice the number of grid points.
    pub fn to_physical(&self, n_samples: usize) -> Result<Vec<Complex64>> {
        let required = 2 * self.grid.len();
        if n_samples < required {
            return Err(Error::Undersampled {
                got: n_samples,
                required,
            });
        }
        Ok(self.synthesize(n_samples))
    }

    /// Inverse DFT synthesis; caller guarantees alias-free sampling.
    pub(crate) fn synthesize(&self, n_samples: usize) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); n_samples];
        let n = n_samples as i64;
        for &(j, c) in &self.entries {
            buf[j.rem_euclid(n) as usize] += c;
        }
        let mut planner = FftPlanner::<f64>::new();
        planner.plan_fft_inverse(n_samples).process(&mut buf);
        buf
    }

    /// Normalized `L^2` norm of physical samples:
    /// `((h / n) * sum |f(x_k)|^2)^(1/2)`, matching [`Self::l2_norm`].
    pub fn sampled_l2(grid: &FrequencyGrid, samples: &[Complex64]) -> f64 {
        let n = samples.len() as f64;
        (grid.weight() / n * samples.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }
}

/// Merges runs of equal indices in an index-sorted list, dropping exact zeros.
fn merge_sorted(raw: Vec<(i64, Complex64)>) -> Vec<(i64, Complex64)> {
    let mut out: Vec<(i64, Complex64)> = Vec::with_capacity(raw.len());
    for (j, c) in raw {
        match out.last_mut() {
            Some(last) if last.0 == j => last.1 += c,
            _ => out.push((j, c)),
        }
    }
    out.retain(|e| e.1 != Complex64::new(0.0, 0.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn indicator_i10() -> SpectralFunction {
        let g = FrequencyGrid::torus(40).unwrap();
        SpectralFunction::from_entries(g, [-11, -10, -9, 9, 10, 11].map(|j| (j, c(1.0)))).unwrap()
    }

    /// Independent pair count over the 36 ordered pairs.
    fn brute_pair_count(set: &[i64], target: i64) -> usize {
        let mut n = 0;
        for a in set {
            for b in set {
                if a + b == target {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn indicator_self_convolution_counts_pairs() {
        let set = [-11, -10, -9, 9, 10, 11];
        assert_eq!(brute_pair_count(&set, 0), 6);
        assert_eq!(brute_pair_count(&set, 1), 4);
        let f = indicator_i10();
        let ff = f.convolve(&f).unwrap();
        assert_eq!(ff.coeff(0), c(6.0));
        assert_eq!(ff.coeff(1), c(4.0));
        for j in -25..=25 {
            assert_eq!(ff.coeff(j).re as usize, brute_pair_count(&set, j));
        }
    }

    #[test]
    fn delta_at_zero_is_the_identity() {
        let f = indicator_i10();
        let d = SpectralFunction::delta(*f.grid(), 0, c(1.0)).unwrap();
        assert_eq!(d.convolve(&f).unwrap(), f);
    }

    #[test]
    fn overflow_is_reported_unless_truncation_requested() {
        let g = FrequencyGrid::torus(15).unwrap();
        let f = SpectralFunction::delta(g, 10, c(1.0)).unwrap();
        assert!(matches!(
            f.convolve(&f),
            Err(Error::SupportOverflow { needed: 20, .. })
        ));
        assert!(f.convolve_with(&f, Overflow::Truncate).unwrap().is_zero());
    }

    #[test]
    fn grid_mismatch_is_refused() {
        let f = SpectralFunction::delta(FrequencyGrid::torus(4).unwrap(), 0, c(1.0)).unwrap();
        let g = SpectralFunction::delta(FrequencyGrid::torus(5).unwrap(), 0, c(1.0)).unwrap();
        assert!(matches!(f.convolve(&g), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn line_convolution_carries_riemann_weight() {
        let g = FrequencyGrid::line(4, 8).unwrap();
        let f = SpectralFunction::delta(g, 1, c(1.0)).unwrap();
        assert_eq!(f.convolve(&f).unwrap().coeff(2), c(0.125));
    }

    #[test]
    fn fft_route_matches_direct_route() {
        let g = FrequencyGrid::torus(30).unwrap();
        let f = SpectralFunction::from_entries(
            g,
            (-7..=5).map(|j| (j, Complex64::new(j as f64 * 0.3 + 1.0, 0.1 * j as f64))),
        )
        .unwrap();
        let h = SpectralFunction::from_entries(
            g,
            (-3..=9).map(|j| (j, Complex64::new(0.5, -(j as f64) * 0.2))),
        )
        .unwrap();
        let a = f.convolve(&h).unwrap();
        let b = f.convolve_fft(&h, Overflow::Error).unwrap();
        assert!(a.sub(&b).unwrap().l1_norm() < 1e-12);
    }

    #[test]
    fn multiplier_examples() {
        let g = FrequencyGrid::torus(4).unwrap();
        let phi = |xi: f64| xi / (1.0 + xi * xi);
        let d1 = SpectralFunction::delta(g, 1, c(1.0)).unwrap();
        assert_eq!(d1.apply_real_multiplier(phi).coeff(1), c(0.5));
        assert_eq!(d1.apply_real_multiplier(|_| 1.0), d1);
        let d0 = SpectralFunction::delta(g, 0, c(1.0)).unwrap();
        assert!(d0.apply_real_multiplier(phi).is_zero());
    }

    #[test]
    fn support_measure_examples() {
        let f = indicator_i10();
        assert_eq!(f.support_measure(0.0), 6.0);
        assert_eq!(SpectralFunction::zero(*f.grid()).support_measure(0.0), 0.0);
        assert_eq!(f.support_measure(1.0), 0.0);
    }

    #[test]
    fn physical_samples() {
        let g = FrequencyGrid::torus(3).unwrap();
        let d0 = SpectralFunction::delta(g, 0, c(1.0)).unwrap();
        assert!(matches!(d0.to_physical(13), Err(Error::Undersampled { .. })));
        for z in d0.to_physical(14).unwrap() {
            assert!((z - c(1.0)).norm() < 1e-15);
        }
        let d1 = SpectralFunction::delta(g, 1, c(1.0)).unwrap();
        let n = 16;
        for (k, z) in d1.to_physical(n).unwrap().into_iter().enumerate() {
            let x = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            assert!((z - Complex64::new(x.cos(), x.sin())).norm() < 1e-14);
        }
    }

    #[test]
    fn interval_indicator_on_line() {
        let g = FrequencyGrid::line(20, 8).unwrap();
        let f = SpectralFunction::interval_indicator(g, 9.0, 11.0, 1.0).unwrap();
        assert_eq!(f.nnz(), 17);
        assert_eq!(f.support(), Some((72, 88)));
    }
}
