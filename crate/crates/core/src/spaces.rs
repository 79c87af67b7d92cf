//! Norms of the Fourier–Lebesgue, Fourier amalgam, modulation and Wiener
//! amalgam families, inhomogeneous and homogeneous.
//!
//! Band `n` is the unit block `n + (-1/2, 1/2]` for the amalgam family and
//! the band piece `σ_n(D) f` of a [`Partition`] for the modulation and
//! Wiener amalgam families. Weights are `⟨n⟩^s = (1 + n²)^{s/2}`, or `|n|^s`
//! with band 0 dropped in the homogeneous variant.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::spectral::SpectralFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    FourierLebesgue,
    FourierAmalgam,
    Modulation,
    WienerAmalgam,
}

impl Family {
    pub fn short_name(self) -> &'static str {
        match self {
            Family::FourierLebesgue => "fl",
            Family::FourierAmalgam => "fa",
            Family::Modulation => "ms",
            Family::WienerAmalgam => "wa",
        }
    }
}

/// One space of the four families: `family:p:q:s[:hom]` in text form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub family: Family,
    pub p: f64,
    pub q: f64,
    pub s: f64,
    #[serde(default)]
    pub homogeneous: bool,
}

impl SpaceSpec {
    pub fn new(family: Family, p: f64, q: f64, s: f64, homogeneous: bool) -> Result<Self> {
        let spec = Self {
            family,
            p,
            q,
            s,
            homogeneous,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn fourier_lebesgue(q: f64, s: f64) -> Self {
        Self {
            family: Family::FourierLebesgue,
            p: q,
            q,
            s,
            homogeneous: false,
        }
    }

    pub fn fourier_amalgam(p: f64, q: f64, s: f64) -> Self {
        Self {
            family: Family::FourierAmalgam,
            p,
            q,
            s,
            homogeneous: false,
        }
    }

    pub fn modulation(q: f64, s: f64) -> Self {
        Self {
            family: Family::Modulation,
            p: 2.0,
            q,
            s,
            homogeneous: false,
        }
    }

    pub fn wiener_amalgam(q: f64, s: f64) -> Self {
        Self {
            family: Family::WienerAmalgam,
            p: 2.0,
            q,
            s,
            homogeneous: false,
        }
    }

    /// The Wiener algebra ℱL¹.
    pub fn wiener_algebra() -> Self {
        Self::fourier_lebesgue(1.0, 0.0)
    }

    pub fn with_s(self, s: f64) -> Self {
        Self { s, ..self }
    }

    pub fn with_homogeneous(self, homogeneous: bool) -> Self {
        Self {
            homogeneous,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if !(v >= 1.0) {
                return Err(Error::InvalidSpace(format!("{name} = {v} must lie in [1, inf]")));
            }
        }
        if !self.s.is_finite() {
            return Err(Error::InvalidSpace(format!("s = {} must be finite", self.s)));
        }
        if matches!(self.family, Family::Modulation | Family::WienerAmalgam) && self.p != 2.0 {
            return Err(Error::InvalidSpace(format!(
                "{} is only available with p = 2 (got p = {})",
                self.family.short_name(),
                self.p
            )));
        }
        Ok(())
    }

    /// Weight of band `n`; `None` for the dropped homogeneous zero band.
    pub fn band_weight(&self, n: i64) -> Option<f64> {
        weight(n as f64, self.s, self.homogeneous)
    }
}

fn weight(x: f64, s: f64, homogeneous: bool) -> Option<f64> {
    if homogeneous {
        (x != 0.0).then(|| x.abs().powf(s))
    } else {
        Some((1.0 + x * x).powf(0.5 * s))
    }
}

fn fmt_exponent(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        v.to_string()
    }
}

fn parse_exponent(text: &str) -> Result<f64> {
    match text.trim() {
        "inf" | "Inf" | "infinity" => Ok(f64::INFINITY),
        t => t
            .parse::<f64>()
            .map_err(|e| Error::InvalidSpace(format!("bad exponent `{t}`: {e}"))),
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}",
            self.family.short_name(),
            fmt_exponent(self.p),
            fmt_exponent(self.q),
            self.s
        )?;
        if self.homogeneous {
            write!(f, ":hom")?;
        }
        Ok(())
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(Error::InvalidSpace(format!(
                "`{text}`: expected family:p:q:s[:hom]"
            )));
        }
        let family = match parts[0].to_ascii_lowercase().as_str() {
            "fl" => Family::FourierLebesgue,
            "fa" => Family::FourierAmalgam,
            "ms" | "mod" => Family::Modulation,
            "wa" => Family::WienerAmalgam,
            other => return Err(Error::InvalidSpace(format!("unknown family `{other}`"))),
        };
        let homogeneous = match parts.get(4) {
            None => false,
            Some(&"hom") => true,
            Some(other) => {
                return Err(Error::InvalidSpace(format!("unknown suffix `{other}`, expected `hom`")))
            }
        };
        let s = parts[3]
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::InvalidSpace(format!("bad s `{}`: {e}", parts[3])))?;
        SpaceSpec::new(
            family,
            parse_exponent(parts[1])?,
            parse_exponent(parts[2])?,
            s,
            homogeneous,
        )
    }
}

/// Frequency-uniform partition of unity `{σ_n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Partition {
    /// `σ_n = χ_{n + (-1/2, 1/2]}`.
    Sharp,
    /// `σ_n(ξ) = max(0, 1 - |ξ - n|)`.
    #[default]
    Triangle,
}

pub fn build_partition(kind: Partition) -> Partition {
    kind
}

impl Partition {
    /// `σ_n(ξ)` at a real frequency.
    pub fn sigma(self, n: i64, xi: f64) -> f64 {
        let d = xi - n as f64;
        match self {
            Partition::Sharp => {
                if d > -0.5 && d <= 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
            Partition::Triangle => (1.0 - d.abs()).max(0.0),
        }
    }

    /// Bands meeting grid index `j`, with exact weights.
    fn bands_at(self, grid: &FrequencyGrid, j: i64) -> ([(i64, f64); 2], usize) {
        match self {
            Partition::Sharp => ([(grid.block_of(j), 1.0), (0, 0.0)], 1),
            Partition::Triangle => {
                let m = grid.per_unit() as i64;
                let lo = j.div_euclid(m);
                let r = j.rem_euclid(m);
                if r == 0 {
                    ([(lo, 1.0), (0, 0.0)], 1)
                } else {
                    let mf = m as f64;
                    ([(lo, (m - r) as f64 / mf), (lo + 1, r as f64 / mf)], 2)
                }
            }
        }
    }

    /// Largest `|ξ - n|` of a frequency in band `n`, in grid indices.
    fn half_width(self, grid: &FrequencyGrid) -> i64 {
        match self {
            Partition::Sharp => (grid.per_unit() as i64 + 1) / 2,
            Partition::Triangle => grid.per_unit() as i64,
        }
    }
}

/// Default sample count for Wiener amalgam norms: eight times the grid size.
pub fn default_wiener_samples(grid: &FrequencyGrid) -> usize {
    8 * grid.len()
}

/// `ℓ^q` norm of nonnegative terms; `q = ∞` gives the maximum.
fn lq<I: IntoIterator<Item = f64>>(terms: I, q: f64) -> f64 {
    if q.is_infinite() {
        terms.into_iter().fold(0.0, f64::max)
    } else if q == 1.0 {
        terms.into_iter().fold(0.0, |a, t| a + t)
    } else if q == 2.0 {
        terms.into_iter().fold(0.0, |a, t| a + t * t).sqrt()
    } else {
        terms.into_iter().fold(0.0, |a, t| a + t.powf(q)).powf(1.0 / q)
    }
}

/// `L^p` of coefficient moduli with Riemann weight `h`.
fn weighted_lp<I: IntoIterator<Item = f64>>(mods: I, p: f64, h: f64) -> f64 {
    if p.is_infinite() {
        mods.into_iter().fold(0.0, f64::max)
    } else {
        h.powf(1.0 / p) * lq(mods, p)
    }
}

fn expect_family(spec: &SpaceSpec, family: Family) -> Result<()> {
    spec.validate()?;
    if spec.family != family {
        return Err(Error::InvalidSpace(format!(
            "expected family {}, got {}",
            family.short_name(),
            spec.family.short_name()
        )));
    }
    Ok(())
}

/// `‖⟨ξ⟩^s f^‖_{L^q}`: pointwise weights. The homogeneous variant drops
/// the frequencies of band 0.
pub fn fourier_lebesgue_norm(f: &SpectralFunction, spec: &SpaceSpec) -> Result<f64> {
    expect_family(spec, Family::FourierLebesgue)?;
    let g = f.grid();
    let terms = f.entries().iter().filter_map(|&(j, c)| {
        if spec.homogeneous && g.block_of(j) == 0 {
            return None;
        }
        weight(g.frequency(j), spec.s, spec.homogeneous).map(|w| w * c.norm())
    });
    Ok(weighted_lp(terms, spec.q, g.weight()))
}

/// Per-block inner norms of the sharp blocks, keyed by block index.
fn block_norms(f: &SpectralFunction, p: f64) -> BTreeMap<i64, f64> {
    let g = f.grid();
    let h = g.weight();
    let mut acc: BTreeMap<i64, f64> = BTreeMap::new();
    for &(j, c) in f.entries() {
        let slot = acc.entry(g.block_of(j)).or_insert(0.0);
        let a = c.norm();
        if p.is_infinite() {
            *slot = slot.max(a);
        } else {
            *slot += a.powf(p) * h;
        }
    }
    if p.is_finite() {
        for v in acc.values_mut() {
            *v = v.powf(1.0 / p);
        }
    }
    acc
}

fn weighted_band_sum(bands: &BTreeMap<i64, f64>, spec: &SpaceSpec) -> f64 {
    lq(
        bands
            .iter()
            .filter_map(|(&n, &v)| spec.band_weight(n).map(|w| w * v)),
        spec.q,
    )
}

/// `‖ ⟨n⟩^s ‖χ_{n+Q} f^‖_{L^p} ‖_{ℓ^q}`.
pub fn fourier_amalgam_norm(f: &SpectralFunction, spec: &SpaceSpec) -> Result<f64> {
    expect_family(spec, Family::FourierAmalgam)?;
    Ok(weighted_band_sum(&block_norms(f, spec.p), spec))
}

/// Coefficients of every nonzero band piece `σ_n(D) f`.
fn band_pieces(f: &SpectralFunction, partition: Partition) -> BTreeMap<i64, Vec<(i64, Complex64)>> {
    let g = f.grid();
    let mut bands: BTreeMap<i64, Vec<(i64, Complex64)>> = BTreeMap::new();
    for &(j, c) in f.entries() {
        let (list, len) = partition.bands_at(g, j);
        for &(n, w) in &list[..len] {
            bands.entry(n).or_default().push((j, c * w));
        }
    }
    bands
}

/// `‖ ⟨n⟩^s ‖σ_n(D) f‖_{L²} ‖_{ℓ^q}`, via Plancherel.
pub fn modulation_norm(f: &SpectralFunction, spec: &SpaceSpec, partition: Partition) -> Result<f64> {
    expect_family(spec, Family::Modulation)?;
    Ok(weighted_band_sum(&modulation_bands(f, partition), spec))
}

fn modulation_bands(f: &SpectralFunction, partition: Partition) -> BTreeMap<i64, f64> {
    let h = f.grid().weight();
    band_pieces(f, partition)
        .into_iter()
        .map(|(n, piece)| (n, (h * piece.iter().map(|e| e.1.norm_sqr()).sum::<f64>()).sqrt()))
        .collect()
}

/// `‖ ‖⟨n⟩^s σ_n(D) f(x)‖_{ℓ^q} ‖_{L²_x}`, sampled at `n_samples` points of
/// the period with the normalized measure of [`SpectralFunction::sampled_l2`].
///
/// Each band piece is shifted to frequencies near 0 before synthesis; its
/// modulus is unchanged by the shift, so `n_samples` only has to resolve a
/// single band.
pub fn wiener_amalgam_norm(
    f: &SpectralFunction,
    spec: &SpaceSpec,
    partition: Partition,
    n_samples: usize,
) -> Result<f64> {
    expect_family(spec, Family::WienerAmalgam)?;
    let g = f.grid();
    let m = g.per_unit() as i64;
    let required = 2 * (2 * partition.half_width(g) + 1) as usize;
    if n_samples < required {
        return Err(Error::Undersampled {
            got: n_samples,
            required,
        });
    }
    let ns = n_samples as i64;
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(n_samples);
    let mut acc = vec![0.0f64; n_samples];
    let mut buf = vec![Complex64::new(0.0, 0.0); n_samples];
    for (n, piece) in band_pieces(f, partition) {
        let Some(w) = spec.band_weight(n) else { continue };
        buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for (j, c) in piece {
            buf[(j - n * m).rem_euclid(ns) as usize] += c;
        }
        fft.process(&mut buf);
        for (a, z) in acc.iter_mut().zip(&buf) {
            let v = w * z.norm();
            if spec.q.is_infinite() {
                *a = a.max(v);
            } else {
                *a += v.powf(spec.q);
            }
        }
    }
    let h = g.weight();
    let total: f64 = acc
        .iter()
        .map(|&a| {
            let pointwise = if spec.q.is_infinite() { a } else { a.powf(1.0 / spec.q) };
            pointwise * pointwise
        })
        .fold(0.0, |a, b| a + b);
    Ok((h / n_samples as f64 * total).sqrt())
}

/// `‖⟨ξ⟩^s f^‖_{L²}` with pointwise weights.
pub fn sobolev_norm(f: &SpectralFunction, s: f64) -> f64 {
    let g = f.grid();
    (g.weight()
        * f.entries()
            .iter()
            .map(|&(j, c)| (1.0 + g.frequency(j).powi(2)).powf(s) * c.norm_sqr())
            .sum::<f64>())
    .sqrt()
}

/// Dispatches on the family with the default partition and sample count.
pub fn space_norm(f: &SpectralFunction, spec: &SpaceSpec) -> Result<f64> {
    space_norm_with(f, spec, Partition::default())
}

pub fn space_norm_with(f: &SpectralFunction, spec: &SpaceSpec, partition: Partition) -> Result<f64> {
    spec.validate()?;
    match spec.family {
        Family::FourierLebesgue => fourier_lebesgue_norm(f, spec),
        Family::FourierAmalgam => fourier_amalgam_norm(f, spec),
        Family::Modulation => modulation_norm(f, spec, partition),
        Family::WienerAmalgam => {
            wiener_amalgam_norm(f, spec, partition, default_wiener_samples(f.grid()))
        }
    }
}

/// The single term `n0` of the outer `ℓ^q` sum.
pub fn band_restricted_norm(f: &SpectralFunction, spec: &SpaceSpec, n0: i64) -> Result<f64> {
    band_restricted_norm_with(f, spec, Partition::default(), n0)
}

/// Band term `n0` under an explicit partition. Fourier–Lebesgue and Fourier
/// amalgam use the sharp block `n0 + Q`; pointwise weights are replaced by
/// the band weight `⟨n0⟩^s`.
pub fn band_restricted_norm_with(
    f: &SpectralFunction,
    spec: &SpaceSpec,
    partition: Partition,
    n0: i64,
) -> Result<f64> {
    spec.validate()?;
    let Some(w) = spec.band_weight(n0) else { return Ok(0.0) };
    let g = f.grid();
    let inner = match spec.family {
        Family::FourierLebesgue | Family::FourierAmalgam => {
            let p = if spec.family == Family::FourierLebesgue { spec.q } else { spec.p };
            let (lo, hi) = g.block_range(n0);
            let mods = f
                .entries()
                .iter()
                .filter(|e| e.0 >= lo && e.0 <= hi)
                .map(|e| e.1.norm());
            weighted_lp(mods, p, g.weight())
        }
        Family::Modulation | Family::WienerAmalgam => {
            let hw = partition.half_width(g);
            let m = g.per_unit() as i64;
            let sum: f64 = f
                .entries()
                .iter()
                .filter(|e| (e.0 - n0 * m).abs() <= hw)
                .map(|&(j, c)| (partition.sigma(n0, g.frequency(j)) * c.norm()).powi(2))
                .fold(0.0, |a, b| a + b);
            (g.weight() * sum).sqrt()
        }
    };
    Ok(w * inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(n: u64) -> FrequencyGrid {
        FrequencyGrid::torus(n).unwrap()
    }

    fn delta(g: FrequencyGrid, j: i64) -> SpectralFunction {
        SpectralFunction::delta(g, j, Complex64::new(1.0, 0.0)).unwrap()
    }

    fn phi0n_torus(n: i64) -> SpectralFunction {
        let g = torus(4 * n as u64);
        SpectralFunction::from_entries(
            g,
            [-n - 1, -n, -n + 1, n - 1, n, n + 1].map(|j| (j, Complex64::new(1.0, 0.0))),
        )
        .unwrap()
    }

    #[test]
    fn parses_and_prints_specs() {
        let s: SpaceSpec = "fa:2:1:-0.5".parse().unwrap();
        assert_eq!(s, SpaceSpec::fourier_amalgam(2.0, 1.0, -0.5));
        let w: SpaceSpec = "wa:2:4:-1:hom".parse().unwrap();
        assert!(w.homogeneous && w.family == Family::WienerAmalgam);
        assert_eq!(w.to_string(), "wa:2:4:-1:hom");
        let m: SpaceSpec = "mod:2:inf:0".parse().unwrap();
        assert!(m.q.is_infinite());
        assert_eq!(m.to_string().parse::<SpaceSpec>().unwrap(), m);
        assert!("wa:1:2:0".parse::<SpaceSpec>().is_err());
        assert!("xx:2:2:0".parse::<SpaceSpec>().is_err());
        assert!("fa:0.5:2:0".parse::<SpaceSpec>().is_err());
        assert!("fa:2:2".parse::<SpaceSpec>().is_err());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(Partition::Sharp.sigma(0, 0.4), 1.0);
        assert_eq!(Partition::Sharp.sigma(1, 0.4), 0.0);
        assert_eq!(Partition::Sharp.sigma(0, 0.5), 1.0);
        assert_eq!(Partition::Sharp.sigma(1, 0.5), 0.0);
        assert_eq!(Partition::Triangle.sigma(0, 0.5), 0.5);
        assert_eq!(Partition::Triangle.sigma(1, 0.5), 0.5);
    }

    #[test]
    fn grid_band_weights_sum_to_one_and_match_sigma() {
        for g in [torus(10), FrequencyGrid::line(10, 8).unwrap(), FrequencyGrid::line(10, 3).unwrap()] {
            for part in [Partition::Sharp, Partition::Triangle] {
                for j in -g.max_index()..=g.max_index() {
                    let (list, len) = part.bands_at(&g, j);
                    let total: f64 = list[..len].iter().map(|b| b.1).sum();
                    assert_eq!(total, 1.0);
                    for &(n, w) in &list[..len] {
                        assert!((w - part.sigma(n, g.frequency(j))).abs() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn amalgam_examples() {
        let g = torus(10);
        let d0 = delta(g, 0);
        for (p, q) in [(1.0, 1.0), (2.0, 3.0), (f64::INFINITY, 2.0)] {
            let spec = SpaceSpec::fourier_amalgam(p, q, -0.7);
            assert_eq!(fourier_amalgam_norm(&d0, &spec).unwrap(), 1.0);
        }
        let v = fourier_amalgam_norm(&delta(g, 5), &SpaceSpec::fourier_amalgam(2.0, 2.0, -1.0)).unwrap();
        assert!((v - 26f64.powf(-0.5)).abs() < 1e-15);
        assert!((v - 0.19612).abs() < 1e-5);

        let f = phi0n_torus(10);
        let brute: f64 = [9.0f64, 10.0, 11.0].iter().map(|n| 2.0 / (1.0 + n * n)).sum::<f64>().sqrt();
        let v = fourier_amalgam_norm(&f, &SpaceSpec::fourier_amalgam(2.0, 2.0, -1.0)).unwrap();
        assert!((v - brute).abs() < 1e-14);
    }

    #[test]
    fn fourier_lebesgue_examples() {
        let f = phi0n_torus(10).scale(Complex64::new(2.5, 0.0));
        let v = fourier_lebesgue_norm(&f, &SpaceSpec::wiener_algebra()).unwrap();
        assert!((v - 15.0).abs() < 1e-14);
        assert_eq!(fourier_lebesgue_norm(&delta(torus(3), 0), &SpaceSpec::fourier_lebesgue(3.0, 2.0)).unwrap(), 1.0);
    }

    #[test]
    fn modulation_examples() {
        let g = torus(6);
        let d3 = delta(g, 3);
        let v = modulation_norm(&d3, &SpaceSpec::modulation(1.0, 0.0), Partition::Triangle).unwrap();
        assert_eq!(v, 1.0);
        let line = FrequencyGrid::line(6, 8).unwrap();
        let f = SpectralFunction::from_fn(line, |xi| Complex64::new((-xi * xi).exp(), xi.sin())).unwrap();
        let a = modulation_norm(&f, &SpaceSpec::modulation(1.5, -0.5), Partition::Sharp).unwrap();
        let b = fourier_amalgam_norm(&f, &SpaceSpec::fourier_amalgam(2.0, 1.5, -0.5)).unwrap();
        assert!((a - b).abs() <= 1e-15 * b);
    }

    #[test]
    fn wiener_single_mode_and_undersampling() {
        let g = torus(6);
        let d1 = delta(g, 1);
        for q in [1.0, 2.0, 4.0] {
            for s in [-1.0, 0.5] {
                let v = wiener_amalgam_norm(&d1, &SpaceSpec::wiener_amalgam(q, s), Partition::Triangle, 64).unwrap();
                assert!((v - 2f64.powf(s / 2.0)).abs() < 1e-14);
            }
        }
        assert!(matches!(
            wiener_amalgam_norm(&d1, &SpaceSpec::wiener_amalgam(2.0, 0.0), Partition::Triangle, 5),
            Err(Error::Undersampled { .. })
        ));
    }

    #[test]
    fn dispatch_and_homogeneous() {
        let f = phi0n_torus(10);
        let spec = SpaceSpec::fourier_amalgam(2.0, 1.0, -0.5);
        assert_eq!(space_norm(&f, &spec).unwrap(), fourier_amalgam_norm(&f, &spec).unwrap());
        let g = torus(200);
        let hom = spec.with_homogeneous(true);
        assert_eq!(space_norm(&delta(g, 0), &hom).unwrap(), 0.0);
        let s = SpaceSpec::fourier_amalgam(2.0, 2.0, -1.0);
        let ratio = space_norm(&delta(g, 100), &s.with_homogeneous(true)).unwrap()
            / space_norm(&delta(g, 100), &s).unwrap();
        assert!((ratio - 10001f64.sqrt() / 100.0).abs() < 1e-12);
        assert!(fourier_lebesgue_norm(&f, &spec).is_err());
    }

    #[test]
    fn band_restriction() {
        let f = phi0n_torus(10).convolve(&phi0n_torus(10)).unwrap();
        let s0 = SpaceSpec::fourier_amalgam(2.0, 2.0, 0.0);
        let v0 = band_restricted_norm(&f, &s0, 1).unwrap();
        assert_eq!(v0, 4.0);
        for fam in [Family::FourierLebesgue, Family::FourierAmalgam, Family::Modulation, Family::WienerAmalgam] {
            let base = SpaceSpec { family: fam, p: 2.0, q: 2.0, s: -1.0, homogeneous: false };
            let a = band_restricted_norm(&f, &base, 1).unwrap();
            let b = band_restricted_norm(&f, &base.with_s(2.0), 1).unwrap();
            assert!((b - 2f64.powf(1.5) * a).abs() < 1e-13 * b);
        }
        assert_eq!(band_restricted_norm(&phi0n_torus(10), &s0, 1).unwrap(), 0.0);
    }
}
