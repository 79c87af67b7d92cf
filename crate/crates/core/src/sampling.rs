//! Seeded test data: random band-limited functions and the smooth profile
//! used as general initial data.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::spectral::SpectralFunction;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the complex disk of radius `r`.
fn disk(rng: &mut Rng, r: f64) -> Complex64 {
    let rad = r * rng.random::<f64>().sqrt();
    Complex64::from_polar(rad, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Random coefficients on `|ξ| ≤ band`, each uniform in the disk of radius
/// `amplitude`. With `hermitian`, `c(-ξ) = conj c(ξ)` so the function is real.
pub fn random_band_limited(
    grid: FrequencyGrid,
    band: f64,
    amplitude: f64,
    hermitian: bool,
    rng: &mut Rng,
) -> Result<SpectralFunction> {
    if band > grid.cutoff() as f64 {
        return Err(Error::InvalidArgument(format!(
            "band {band} exceeds grid cutoff {}",
            grid.cutoff()
        )));
    }
    let top = (band * grid.per_unit() as f64).floor() as i64;
    let mut entries = Vec::with_capacity(2 * top as usize + 1);
    if hermitian {
        entries.push((0, Complex64::new(amplitude * (2.0 * rng.random::<f64>() - 1.0), 0.0)));
        for j in 1..=top {
            let c = disk(rng, amplitude);
            entries.push((j, c));
            entries.push((-j, c.conj()));
        }
    } else {
        for j in -top..=top {
            entries.push((j, disk(rng, amplitude)));
        }
    }
    SpectralFunction::from_entries(grid, entries)
}

/// Random support-sparse data: `count` random modes with `|ξ| ≤ band`.
pub fn random_sparse(
    grid: FrequencyGrid,
    band: f64,
    count: usize,
    amplitude: f64,
    rng: &mut Rng,
) -> Result<SpectralFunction> {
    let top = (band * grid.per_unit() as f64).floor() as i64;
    let entries: Vec<_> = (0..count)
        .map(|_| (rng.random_range(-top..=top), disk(rng, amplitude)))
        .collect();
    SpectralFunction::from_entries(grid, entries)
}

/// Smooth real profile on `|ξ| ≤ 4`: amplitudes `exp(-ξ²/2)` with seeded
/// random phases, scaled to unit ℱL¹ norm.
pub fn smooth_profile(grid: FrequencyGrid, seed: u64) -> Result<SpectralFunction> {
    let mut r = rng(seed);
    let top = (4.0f64.min(grid.cutoff() as f64) * grid.per_unit() as f64).floor() as i64;
    let mut entries = vec![(0, Complex64::new(1.0, 0.0))];
    for j in 1..=top {
        let xi = grid.frequency(j);
        let c = Complex64::from_polar((-0.5 * xi * xi).exp(), r.random_range(0.0..std::f64::consts::TAU));
        entries.push((j, c));
        entries.push((-j, c.conj()));
    }
    let f = SpectralFunction::from_entries(grid, entries)?;
    let norm = f.l1_norm();
    Ok(f.scale(Complex64::new(1.0 / norm, 0.0)))
}
