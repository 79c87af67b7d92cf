//! Executable checks of the quantitative lemmas behind the inflation
//! argument: identities to 1e-12, inequalities with measured constants,
//! asymptotic statements through ratios tracked along `N`-sweeps.
//!
//! Every check is deterministic given its seed and returns an
//! [`OracleReport`]; a failing inequality carries a serialized witness.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::RngExt;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{
    duhamel, energy, fixed_point_solve, integrate_rk4, linear_propagate, phi, picard_series, rk4_error_estimate,
    PicardExpansion, DEFAULT_C_HAT, PROVABLE_C_HAT,
};
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::inflation::{make_phi0n, run_point, schedule, BaseData, InflationConfig};
use crate::quadrature::{QuadratureSpec, TimeMesh};
use crate::sampling::{random_band_limited, rng, smooth_profile, Rng};
use crate::spaces::{
    band_restricted_norm, default_wiener_samples, fourier_amalgam_norm, space_norm, wiener_amalgam_norm,
    Partition, SpaceSpec,
};
use crate::spectral::SpectralFunction;

/// Tolerance of identity checks.
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub id: String,
    /// The statement being checked, in words.
    pub lemma: String,
    pub pass: bool,
    /// Reported for information; not counted by [`suite_passes`].
    pub informational: bool,
    pub constants: BTreeMap<String, f64>,
    pub sample: String,
    pub tolerance: f64,
    pub seed: Option<u64>,
    /// Input reproducing the worst case (always present on failure).
    pub witness: Option<serde_json::Value>,
    pub elapsed_s: f64,
}

impl OracleReport {
    fn new(id: &str, lemma: &str) -> Self {
        Self {
            id: id.into(),
            lemma: lemma.into(),
            pass: true,
            informational: false,
            constants: BTreeMap::new(),
            sample: String::new(),
            tolerance: 0.0,
            seed: None,
            witness: None,
            elapsed_s: 0.0,
        }
    }

    fn constant(&mut self, key: &str, value: f64) {
        self.constants.insert(key.into(), value);
    }

    pub fn status(&self) -> &'static str {
        match (self.pass, self.informational) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (true, true) => "info",
            (false, true) => "info (violated)",
        }
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let consts: Vec<String> = self.constants.iter().map(|(k, v)| format!("{k}={v:.6e}")).collect();
        format!("{:<16} {:<34} {}  [{}]", self.status(), self.id, self.lemma, consts.join(", "))
    }
}

fn timed<F: FnOnce() -> Result<OracleReport>>(f: F) -> Result<OracleReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed_s = start.elapsed().as_secs_f64();
    Ok(r)
}

fn witness<T: Serialize>(value: &T) -> Option<serde_json::Value> {
    serde_json::to_value(value).ok()
}

/// True when every non-informational report passes.
pub fn suite_passes(reports: &[OracleReport]) -> bool {
    reports.iter().filter(|r| !r.informational).all(|r| r.pass)
}

// ---------------------------------------------------------------- phase

/// `ξ ξ1 ξ2 (ξ² - ξ1 ξ2 + 3) / ((1+ξ1²)(1+ξ2²)(1+ξ²))` with `ξ = ξ1 + ξ2`.
pub fn phase_closed_form(x1: f64, x2: f64) -> f64 {
    let x = x1 + x2;
    x * x1 * x2 * (x * x - x1 * x2 + 3.0) / ((1.0 + x1 * x1) * (1.0 + x2 * x2) * (1.0 + x * x))
}

/// Resonance phase `Φ = -φ(ξ1 + ξ2) + φ(ξ1) + φ(ξ2)`, checked against the
/// closed form.
pub fn phase_resonance(x1: f64, x2: f64) -> Result<f64> {
    let direct = -phi(x1 + x2) + phi(x1) + phi(x2);
    let closed = phase_closed_form(x1, x2);
    // the three φ terms are at most 1/2 each, so rounding is absolute
    if (direct - closed).abs() > IDENTITY_TOL {
        return Err(Error::IdentityViolation(format!(
            "phase at ({x1}, {x2}): direct {direct:e} vs closed form {closed:e}"
        )));
    }
    Ok(direct)
}

// ------------------------------------------------------------- majorant

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MajorantVariant {
    /// `b_k = C Σ_{k1+k2=k} b_{k1} b_{k2}`.
    Plain,
    /// `b_k = C/(k-1) Σ_{k1+k2=k} b_{k1} b_{k2}`, as produced by the time integral.
    Averaged,
}

/// `C0 = (2π²/3) C b1`.
pub fn majorant_c0(c: f64, b1: f64) -> f64 {
    2.0 * PI * PI / 3.0 * c * b1
}

/// Builds `b_1..b_K` by the equality recursion and checks `b_k ≤ b1 C0^{k-1}`.
pub fn majorant_sequence(c: f64, b1: f64, k_max: usize, variant: MajorantVariant) -> Result<Vec<f64>> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("majorant sequence needs K >= 2".into()));
    }
    if !(c > 0.0 && b1 >= 0.0) {
        return Err(Error::InvalidArgument("need C > 0 and b1 >= 0".into()));
    }
    let c0 = majorant_c0(c, b1);
    let mut b = vec![b1];
    for k in 2..=k_max {
        let s: f64 = (1..k).map(|k1| b[k1 - 1] * b[k - k1 - 1]).sum();
        let factor = match variant {
            MajorantVariant::Plain => c,
            MajorantVariant::Averaged => c / (k - 1) as f64,
        };
        b.push(factor * s);
    }
    for (i, &bk) in b.iter().enumerate() {
        let bound = b1 * c0.powi(i as i32);
        if bk > bound * (1.0 + 1e-12) {
            return Err(Error::IdentityViolation(format!(
                "b_{} = {bk:e} exceeds b1 C0^{} = {bound:e}",
                i + 1,
                i
            )));
        }
    }
    Ok(b)
}

pub fn check_majorant(k_max: usize) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("majorant", "b_k <= b1 C0^(k-1), C0 = (2 pi^2/3) C b1, both recursions");
        let mut worst: f64 = 0.0;
        let mut cases = 0;
        for variant in [MajorantVariant::Plain, MajorantVariant::Averaged] {
            for &c in &[0.05, 0.25, 1.0, 3.0] {
                for &b1 in &[0.0, 0.1, 1.0, 7.5] {
                    cases += 1;
                    match majorant_sequence(c, b1, k_max, variant) {
                        Ok(b) => {
                            let c0 = majorant_c0(c, b1);
                            for (i, bk) in b.iter().enumerate().skip(1) {
                                if *bk > 0.0 {
                                    worst = worst.max(bk / (b1 * c0.powi(i as i32)));
                                }
                            }
                        }
                        Err(e) => {
                            rep.pass = false;
                            rep.witness = witness(&(c, b1, k_max, variant, e.to_string()));
                        }
                    }
                }
            }
        }
        let plain = majorant_sequence(1.0, 1.0, 4, MajorantVariant::Plain)?;
        let avg = majorant_sequence(1.0, 1.0, k_max, MajorantVariant::Averaged)?;
        let catalan_ok = plain == vec![1.0, 1.0, 2.0, 5.0];
        let unit_ok = avg.iter().all(|&b| (b - 1.0).abs() < 1e-15);
        rep.pass &= catalan_ok && unit_ok;
        rep.constant("max_ratio_to_bound", worst);
        rep.constant("C0_at_C1_b1", majorant_c0(1.0, 1.0));
        rep.sample = format!("{cases} (C, b1, variant) triples up to K = {k_max}; Catalan and unit sequences");
        Ok(rep)
    })
}

// -------------------------------------------------------- support growth

fn phi0n_grid(n: u64, k: usize) -> Result<FrequencyGrid> {
    FrequencyGrid::torus(k as u64 * (n + 1) + 1)
}

/// Number of nonzero Fourier points of each iterate, relative threshold
/// `1e-12` of the iterate's largest coefficient.
pub fn support_counts(n: u64, k_max: usize, t: f64, r: f64) -> Result<Vec<usize>> {
    let grid = phi0n_grid(n, k_max)?;
    let u0 = make_phi0n(n, r, grid)?;
    let exp = PicardExpansion::compute(&u0, k_max, t, &QuadratureSpec::default())?;
    Ok((1..=k_max)
        .map(|k| {
            let f = exp.iterate(k);
            let cut = 1e-12 * f.max_abs_coeff();
            f.entries().iter().filter(|e| e.1.norm() > cut).count()
        })
        .collect())
}

/// Support measures of `U_k[φ_{0,N}](t)` are bounded by `Ĉ^k` and do not
/// depend on `N`. `Ĉ` is the smallest constant fitting the measurements.
pub fn check_support_growth(n_list: &[u64], k_max: usize, t: f64, r: f64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("support_growth", "|supp F U_k[phi_0N](t)| <= C^k, uniformly in N");
        let per_n: Vec<Vec<usize>> = n_list
            .par_iter()
            .map(|&n| support_counts(n, k_max, t, r))
            .collect::<Result<_>>()?;
        let first = &per_n[0];
        let uniform = per_n.iter().all(|v| v == first);
        let c_hat = first
            .iter()
            .enumerate()
            .map(|(i, &m)| (m as f64).powf(1.0 / (i + 1) as f64))
            .fold(0.0, f64::max);
        let bounded = first
            .iter()
            .enumerate()
            .all(|(i, &m)| m as f64 <= c_hat.powi(i as i32 + 1) * (1.0 + 1e-12));
        rep.pass = uniform && bounded && first[0] == 6 && first.get(1).is_none_or(|&m| m <= 15);
        rep.constant("C_hat", c_hat);
        for (i, m) in first.iter().enumerate() {
            rep.constant(&format!("measure_k{}", i + 1), *m as f64);
        }
        rep.sample = format!("torus, N in {n_list:?}, k <= {k_max}, t = {t}, R = {r}");
        if !rep.pass {
            rep.witness = witness(&(n_list, per_n));
        }
        Ok(rep)
    })
}

// ------------------------------------------------------------------- ĉ

/// One calibration input: data, time and the spaces to measure in.
#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeCase {
    pub label: String,
    pub u0: SpectralFunction,
    pub t: f64,
}

/// Spaces of the envelope check: `ℱL¹` and `ŵ^{p,q}_s` with `s ∈ [0, 1]`.
pub fn envelope_spaces() -> Vec<SpaceSpec> {
    let mut out = vec![SpaceSpec::wiener_algebra()];
    for &s in &[0.0, 0.5, 1.0] {
        for &(p, q) in &[(1.0, 1.0), (2.0, 2.0), (1.0, f64::INFINITY), (2.0, 1.0)] {
            out.push(SpaceSpec::fourier_amalgam(p, q, s));
        }
    }
    out
}

/// Smallest `ĉ` with `‖U_k(t)‖_X ≤ (ĉ t)^{k-1} ‖u0‖_{ℱL¹}^{k-1} ‖u0‖_X` for
/// `2 ≤ k ≤ k_max` and every `X` in `spaces`.
pub fn envelope_constant(case: &EnvelopeCase, k_max: usize, spaces: &[SpaceSpec]) -> Result<f64> {
    let m = case.u0.l1_norm();
    if m == 0.0 || case.t == 0.0 {
        return Ok(0.0);
    }
    let exp = PicardExpansion::compute(&case.u0, k_max, case.t, &QuadratureSpec::default())?;
    let mut c: f64 = 0.0;
    for spec in spaces {
        let x0 = space_norm(&case.u0, spec)?;
        for k in 2..=k_max {
            let ratio = space_norm(exp.iterate(k), spec)? / ((case.t * m).powi(k as i32 - 1) * x0);
            c = c.max(ratio.powf(1.0 / (k - 1) as f64));
        }
    }
    Ok(c)
}

/// Torus data: `φ_{0,N}` along the `s = -1` and `s = -2` schedules and
/// random real data on `|ξ| ≤ 4` at several times. `seeds` selects the
/// random draws, so disjoint seed ranges give training and test sets.
pub fn envelope_cases(n_list: &[u64], seeds: std::ops::Range<u64>, k_max: usize) -> Result<Vec<EnvelopeCase>> {
    let mut cases = Vec::new();
    for &n in n_list {
        for s in [-1.0, -2.0] {
            let sch = schedule(s, n, None, None)?;
            let grid = phi0n_grid(n, k_max)?;
            cases.push(EnvelopeCase {
                label: format!("phi0N N={n} s={s}"),
                u0: make_phi0n(n, sch.r_amp, grid)?,
                t: sch.t,
            });
        }
    }
    let grid = FrequencyGrid::torus(k_max as u64 * 5 + 1)?;
    for seed in seeds {
        let mut r = rng(seed);
        let u0 = random_band_limited(grid, 4.0, 1.0, true, &mut r)?;
        let u0 = u0.scale(Complex64::new(1.0 / u0.l1_norm(), 0.0));
        for &t in &[0.05, 0.5, 2.0] {
            cases.push(EnvelopeCase {
                label: format!("random seed={seed} t={t}"),
                u0: u0.clone(),
                t,
            });
        }
    }
    Ok(cases)
}

/// Largest envelope constant over `cases`, with the label attaining it.
pub fn calibrate_c_hat(cases: &[EnvelopeCase], k_max: usize) -> Result<(f64, String)> {
    let spaces = envelope_spaces();
    let vals: Vec<f64> = cases
        .par_iter()
        .map(|c| envelope_constant(c, k_max, &spaces))
        .collect::<Result<_>>()?;
    let (i, c) = vals
        .iter()
        .enumerate()
        .fold((0, 0.0), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    Ok((c, cases.get(i).map(|c| c.label.clone()).unwrap_or_default()))
}

/// The frozen `ĉ` bounds the Picard envelope on fresh data (new seeds and
/// `N` values) and does not exceed the provable constant.
pub fn check_picard_envelope(c_hat: f64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new(
            "picard_envelope",
            "|U_k(t)|_X <= (c t)^(k-1) |u0|_FL1^(k-1) |u0|_X, k <= 5, single c",
        );
        let k_max = 5;
        let n_list: Vec<u64> = (4..=10).map(|e| 1u64 << e).chain([24, 48, 96, 384, 768]).collect();
        let cases = envelope_cases(&n_list, 100..116, k_max)?;
        let spaces = envelope_spaces();
        let vals: Vec<f64> = cases
            .par_iter()
            .map(|c| envelope_constant(c, k_max, &spaces))
            .collect::<Result<_>>()?;
        let worst = vals.iter().copied().fold(0.0, f64::max);
        let phi_worst = vals
            .iter()
            .zip(&cases)
            .filter(|(_, c)| c.label.starts_with("phi0N"))
            .map(|(v, _)| *v)
            .fold(0.0, f64::max);
        rep.pass = worst <= c_hat * (1.0 + 1e-9) && c_hat <= PROVABLE_C_HAT;
        rep.constant("c_hat_frozen", c_hat);
        rep.constant("c_measured_max", worst);
        rep.constant("c_measured_phi0N", phi_worst);
        rep.constant("c_provable", PROVABLE_C_HAT);
        rep.tolerance = 1e-9;
        rep.seed = Some(100);
        rep.sample = format!("{} torus cases (phi0N over N in {n_list:?}, random seeds 100..116), FL1 and w^(p,q)_s with s in [0,1]", cases.len());
        if !rep.pass {
            let i = vals.iter().position(|&v| v == worst).unwrap_or(0);
            rep.witness = witness(&cases[i]);
        }
        Ok(rep)
    })
}

// --------------------------------------------------------------- items d0

/// Ratio `max / first` of a sequence fitted on its first entry.
fn growth(v: &[f64]) -> f64 {
    let first = v[0];
    v.iter().map(|x| x / first).fold(0.0, f64::max)
}

/// The four estimates for `u_{0,N} = u0 + φ_{0,N}` (`u0` the smooth
/// profile) along the schedule of `s`: each ratio to its envelope must stay
/// within twice its value at the smallest `N`; the first must be constant
/// within ±20%.
pub fn check_d0(n_list: &[u64], s: f64, spec: SpaceSpec, seed: u64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new(
            "perturbation_estimates",
            "|u0N-u0| ~ R N^s, |U1| <~ 1+R N^s, |U2[u0N]-U2[phi]| <~ tR, |U_k| <~ C^k R^k t^(k-1)",
        );
        let k_max = 4;
        let spec = spec.with_s(s);
        let rows: Vec<[f64; 5]> = n_list
            .par_iter()
            .map(|&n| -> Result<[f64; 5]> {
                let sch = schedule(s, n, None, None)?;
                let (r, t) = (sch.r_amp, sch.t);
                let grid = FrequencyGrid::torus(k_max as u64 * (n + 5) + 1)?;
                let u0 = smooth_profile(grid, seed)?;
                let ph = make_phi0n(n, r, grid)?;
                let data = u0.add(&ph)?;
                let q = QuadratureSpec::default();
                let full = PicardExpansion::compute(&data, k_max, t, &q)?;
                let bare = PicardExpansion::compute(&ph, 2, t, &q)?;
                let rns = r * (n as f64).powf(s);
                Ok([
                    space_norm(&ph, &spec)? / rns,
                    space_norm(full.iterate(1), &spec)? / (1.0 + rns),
                    space_norm(&full.iterate(2).sub(bare.iterate(2))?, &spec)? / (t * r),
                    space_norm(full.iterate(3), &spec)? / (r.powi(3) * t * t),
                    space_norm(full.iterate(4), &spec)? / (r.powi(4) * t.powi(3)),
                ])
            })
            .collect::<Result<_>>()?;
        let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
        let item1 = col(0);
        let mean1 = item1.iter().sum::<f64>() / item1.len() as f64;
        let spread1 = item1.iter().map(|x| (x / mean1 - 1.0).abs()).fold(0.0, f64::max);
        let mut ok = spread1 <= 0.2;
        let names = ["item1_ratio", "item2_ratio", "item3_ratio", "item4_k3_ratio", "item4_k4_ratio"];
        for (i, name) in names.iter().enumerate() {
            let g = growth(&col(i));
            rep.constant(&format!("{name}_first"), col(i)[0]);
            rep.constant(&format!("{name}_growth"), g);
            ok &= g <= 2.0;
        }
        rep.constant("item1_spread", spread1);

        // at t = 0 both second iterates vanish
        let grid = FrequencyGrid::torus(2 * (n_list[0] + 5) + 1)?;
        let ph = make_phi0n(n_list[0], 2.0, grid)?;
        let data = smooth_profile(grid, seed)?.add(&ph)?;
        let q = QuadratureSpec::default();
        let d = PicardExpansion::compute(&data, 2, 0.0, &q)?
            .iterate(2)
            .sub(PicardExpansion::compute(&ph, 2, 0.0, &q)?.iterate(2))?
            .l1_norm();
        rep.constant("item3_at_t0", d);
        ok &= d == 0.0;

        rep.pass = ok;
        rep.tolerance = 2.0;
        rep.seed = Some(seed);
        rep.sample = format!("torus, {spec}, s = {s} schedule, N in {n_list:?}, smooth u0");
        if !ok {
            rep.witness = witness(&(n_list, &rows));
        }
        Ok(rep)
    })
}

// --------------------------------------------------------- lower bounds

/// `χ_{I_N} * χ_{I_N}` at the grid points of `[-1, 1]` (the line values
/// carry the grid weight and approximate the continuous convolution).
pub fn minorant_values(n: u64, grid: FrequencyGrid) -> Result<Vec<(f64, f64)>> {
    let ind = make_phi0n(n, 1.0, grid.with_cutoff(2 * n + 3)?)?;
    let conv = ind.convolve(&ind)?;
    let g = *conv.grid();
    let m = g.per_unit() as i64;
    Ok((-m..=m)
        .map(|j| (g.frequency(j), conv.coeff(j).re))
        .collect())
}

/// `Re ∫_0^T e^{itΦ} dt` by Gauss–Legendre quadrature.
pub fn resonant_integral(phase: f64, t_end: f64) -> Result<f64> {
    let mesh = TimeMesh::new(t_end, 1, 16)?;
    Ok(mesh.integrate(|t| (t * phase).cos()))
}

/// Band-1 term of `U_2[φ_{0,N}](T)` normalized by `R²T`.
pub fn band1_kappa(n: u64, r: f64, t: f64, spec: &SpaceSpec, grid_kind_line: Option<u32>) -> Result<f64> {
    let grid = match grid_kind_line {
        None => FrequencyGrid::torus(2 * n + 3)?,
        Some(per_unit) => FrequencyGrid::line(2 * n + 3, per_unit)?,
    };
    let u0 = make_phi0n(n, r, grid)?;
    let u2 = PicardExpansion::compute(&u0, 2, t, &QuadratureSpec::default())?;
    Ok(band_restricted_norm(u2.iterate(2), spec, 1)? / (r * r * t))
}

/// Lower bound for the second iterate: `κ_N` stable within 2× along the
/// schedule of `s` (with `T` capped at `t_max`), the convolution minorant
/// `χ_{I_N} * χ_{I_N} ≥ 1` on bands `-1..1`, and
/// `Re ∫_0^T e^{itΦ} ≥ T/2` at sampled resonant triples.
pub fn check_d2(
    n_list: &[u64],
    s: f64,
    spec: SpaceSpec,
    t_max: f64,
    samples: usize,
    seed: u64,
) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new(
            "second_iterate_lower",
            "band-1 of U2[phi_0N](T) >= kappa R^2 T; chi*chi >= 1 on [-1,1]; Re int e^(it Phi) >= T/2",
        );
        if !(t_max > 0.0 && t_max <= 0.1) {
            return Err(Error::InvalidArgument(format!("T cap {t_max} must lie in (0, 0.1]")));
        }
        let spec = spec.with_s(s);
        let kappas: Vec<f64> = n_list
            .par_iter()
            .map(|&n| {
                let sch = schedule(s, n, None, None)?;
                band1_kappa(n, sch.r_amp, sch.t.min(t_max), &spec, None)
            })
            .collect::<Result<_>>()?;
        let kmin = kappas.iter().copied().fold(f64::INFINITY, f64::min);
        let kmax = kappas.iter().copied().fold(0.0, f64::max);
        rep.constant("kappa_min", kmin);
        rep.constant("kappa_max", kmax);
        rep.constant("kappa_spread", kmax / kmin);
        let mut ok = kmax / kmin <= 2.0 && kmin > 0.0;

        // minorant on the torus (exact counts) and on a line grid
        let torus = minorant_values(n_list[0], FrequencyGrid::torus(1)?)?;
        let counts: Vec<f64> = torus.iter().map(|v| v.1).collect();
        ok &= counts == vec![4.0, 6.0, 4.0];
        let line = minorant_values(n_list[0], FrequencyGrid::line(1, 8)?)?;
        let line_min = line.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
        rep.constant("minorant_torus_min", counts.iter().copied().fold(f64::INFINITY, f64::min));
        rep.constant("minorant_line_min", line_min);
        ok &= line_min >= 1.0;

        // resonant triples ξ ∈ [1/2, 1], ξ1 ∈ [ξ+N-1, N+1], ξ2 = ξ - ξ1
        let t_res = 0.01;
        let mut r = rng(seed);
        let mut worst = f64::INFINITY;
        let mut worst_triple = (0.0, 0.0);
        let (mut pmin, mut pmax) = (f64::INFINITY, 0.0f64);
        for _ in 0..samples {
            let n = n_list[r.random_range(0..n_list.len())] as f64;
            let xi = r.random_range(0.5..=1.0);
            let x1 = r.random_range(xi + n - 1.0..=n + 1.0);
            let ph = phase_resonance(x1, xi - x1)?;
            pmin = pmin.min(ph.abs());
            pmax = pmax.max(ph.abs());
            let val = resonant_integral(ph, t_res)? / t_res;
            if val < worst {
                worst = val;
                worst_triple = (x1, xi - x1);
            }
        }
        rep.constant("re_integral_over_T_min", worst);
        rep.constant("abs_phase_min", pmin);
        rep.constant("abs_phase_max", pmax);
        ok &= worst >= 0.5;

        rep.pass = ok;
        rep.tolerance = 2.0;
        rep.seed = Some(seed);
        rep.sample = format!(
            "torus, {spec}, s = {s} schedule with T <= {t_max}, N in {n_list:?}; {samples} resonant triples at T = {t_res}"
        );
        if !ok {
            rep.witness = witness(&(n_list, &kappas, worst_triple));
        }
        Ok(rep)
    })
}

// ----------------------------------------------------------- embeddings

fn random_real(grid: FrequencyGrid, band: f64, r: &mut Rng) -> Result<SpectralFunction> {
    random_band_limited(grid, band, 1.0, true, r)
}

fn wa(f: &SpectralFunction, q: f64, s: f64, partition: Partition) -> Result<f64> {
    wiener_amalgam_norm(f, &SpaceSpec::wiener_amalgam(q, s), partition, default_wiener_samples(f.grid()))
}

/// Embeddings `‖f‖_{W^{2,q}_s} ≤ ‖f‖_{ŵ^{2,q}_s}` for `q ≤ 2` and
/// `‖f‖_{W^{2,q1}_s} ≤ ‖f‖_{W^{2,q2}_s}` for `q1 ≥ q2`, with constant 1, on
/// random real band-limited functions; `q = 2` must be an equality for the
/// sharp partition.
pub fn check_embeddings(samples: usize, grid: FrequencyGrid, partition: Partition, seed: u64) -> Result<OracleReport> {
    timed(|| {
        let label = format!("{:?} grid, {:?} partition", grid.kind(), partition);
        let mut rep = OracleReport::new(
            "embeddings",
            "|f|_W(2,q,s) <= |f|_w(2,q,s) for q <= 2; |f|_W(2,q1,s) <= |f|_W(2,q2,s) for q1 >= q2",
        );
        let band = (grid.cutoff() as f64).min(6.0);
        let results: Vec<(f64, f64, f64, u64)> = (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let mut r = rng(seed.wrapping_add(i));
                let f = random_real(grid, band, &mut r)?;
                let s = r.random_range(-2.0..=2.0);
                let mut inc1: f64 = 0.0;
                for &q in &[1.0, 1.5, 2.0] {
                    let hat = fourier_amalgam_norm(&f, &SpaceSpec::fourier_amalgam(2.0, q, s))?;
                    inc1 = inc1.max(wa(&f, q, s, partition)? / hat);
                }
                let mut inc2: f64 = 0.0;
                for &(q1, q2) in &[(2.0, 1.0), (4.0, 2.0), (f64::INFINITY, 1.0), (3.0, 1.5)] {
                    inc2 = inc2.max(wa(&f, q1, s, partition)? / wa(&f, q2, s, partition)?);
                }
                let eq2 = (wa(&f, 2.0, s, partition)? / fourier_amalgam_norm(&f, &SpaceSpec::fourier_amalgam(2.0, 2.0, s))? - 1.0).abs();
                Ok((inc1, inc2, eq2, seed.wrapping_add(i)))
            })
            .collect::<Result<_>>()?;
        let worst1 = results.iter().fold((0.0, 0), |a, r| if r.0 > a.0 { (r.0, r.3) } else { a });
        let worst2 = results.iter().map(|r| r.1).fold(0.0, f64::max);
        let eq2 = results.iter().map(|r| r.2).fold(0.0, f64::max);
        rep.constant("inc1_max_ratio", worst1.0);
        rep.constant("inc2_max_ratio", worst2);
        rep.constant("q2_equality_defect", eq2);
        let inc1_ok = worst1.0 <= 1.0 + 1e-10;
        let inc2_ok = worst2 <= 1.0 + 1e-10;
        let eq_ok = partition == Partition::Triangle && grid.per_unit() > 1 || eq2 <= 1e-10;
        rep.pass = inc1_ok && inc2_ok && eq_ok;
        rep.tolerance = 1e-10;
        rep.seed = Some(seed);
        rep.sample = format!("{samples} random real functions, |xi| <= {band}, s in [-2, 2]; {label}");
        if !rep.pass {
            let mut r = rng(worst1.1);
            rep.witness = witness(&random_real(grid, band, &mut r)?);
        }
        Ok(rep)
    })
}

/// Two bands with two modes each on a line grid: Minkowski is strict, so
/// `‖f‖_{W^{2,1}} < ‖f‖_{ŵ^{2,1}}`.
pub fn check_embedding_strict() -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("embedding_strict", "|f|_W(2,1,0) < |f|_w(2,1,0) for a generic two-band f");
        let g = FrequencyGrid::line(4, 8)?;
        let one = Complex64::new(1.0, 0.0);
        let f = SpectralFunction::from_entries(g, [(0, one), (1, one), (8, one), (11, one)])?;
        let w = wa(&f, 1.0, 0.0, Partition::Sharp)?;
        let hat = fourier_amalgam_norm(&f, &SpaceSpec::fourier_amalgam(2.0, 1.0, 0.0))?;
        rep.constant("W_norm", w);
        rep.constant("w_hat_norm", hat);
        rep.pass = w < hat * (1.0 - 1e-6);
        rep.sample = "line grid h = 1/8, modes at 0, 1/8, 1, 11/8, sharp partition".into();
        if !rep.pass {
            rep.witness = witness(&f);
        }
        Ok(rep)
    })
}

// --------------------------------------------------------------- bilinear

/// `‖N(u, v)(t)‖_X ≤ ∫_0^t ‖u‖_{ℱL¹} ‖v‖_X ≤ t sup‖u‖_{ℱL¹} sup‖v‖_X` for
/// `u(τ) = U(τ)(a + τ b)`, `v(τ) = U(τ)(c + τ d)` with random band-limited
/// `a..d` on the torus. Norms of affine paths are convex, so the sups sit at
/// the endpoints.
pub fn check_bilinear(samples: usize, s_range: (f64, f64), seed: u64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new(
            "bilinear_bound",
            "|N(u,v)(t)|_X <= int_0^t |u|_FL1 |v|_X <= t |u|_Linf(FL1) |v|_Linf(X)",
        );
        let grid = FrequencyGrid::torus(17)?;
        let results: Vec<(f64, f64, u64)> = (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let case_seed = seed.wrapping_add(i);
                let (a, b, c, d, t, spec) = bilinear_case(grid, s_range, case_seed)?;
                let path = |x: &SpectralFunction, y: &SpectralFunction, tau: f64| -> Result<SpectralFunction> {
                    x.add(&y.scale(Complex64::new(tau, 0.0)))
                };
                let u = |tau: f64| linear_propagate(&path(&a, &b, tau).expect("same grid"), tau);
                let v = |tau: f64| linear_propagate(&path(&c, &d, tau).expect("same grid"), tau);
                let (nv, _) = duhamel(u, v, t, &QuadratureSpec::default())?;
                let lhs = space_norm(&nv, &spec)?;
                let su = a.l1_norm().max(path(&a, &b, t)?.l1_norm());
                let sv = space_norm(&c, &spec)?.max(space_norm(&path(&c, &d, t)?, &spec)?);
                let mesh = TimeMesh::new(t, 64, 8)?;
                let mut integral = 0.0;
                for (tau, w) in mesh.times().into_iter().zip(mesh.weights()) {
                    integral += w * path(&a, &b, tau)?.l1_norm() * space_norm(&path(&c, &d, tau)?, &spec)?;
                }
                Ok((lhs / integral, integral / (t * su * sv), case_seed))
            })
            .collect::<Result<_>>()?;
        let worst = results.iter().fold((0.0, 0), |a, r| if r.0 > a.0 { (r.0, r.2) } else { a });
        let chain = results.iter().map(|r| r.1).fold(0.0, f64::max);
        rep.constant("measured_constant", worst.0);
        rep.constant("integral_over_sup_bound", chain);
        rep.tolerance = 1e-8;
        rep.pass = worst.0 <= 1.0 + 1e-8 && chain <= 1.0 + 1e-8;
        rep.seed = Some(seed);
        rep.sample = format!("{samples} torus cases, |xi| <= 8, s in [{}, {}], t in (0, 1], FL^q_s and w^(p,q)_s", s_range.0, s_range.1);
        if !rep.pass {
            rep.witness = witness(&bilinear_case(grid, s_range, worst.1)?);
        }
        Ok(rep)
    })
}

type BilinearCase = (
    SpectralFunction,
    SpectralFunction,
    SpectralFunction,
    SpectralFunction,
    f64,
    SpaceSpec,
);

fn bilinear_case(grid: FrequencyGrid, s_range: (f64, f64), seed: u64) -> Result<BilinearCase> {
    let mut r = rng(seed);
    let draw = |r: &mut Rng| random_band_limited(grid, 8.0, 1.0, false, r);
    let (a, b, c, d) = (draw(&mut r)?, draw(&mut r)?, draw(&mut r)?, draw(&mut r)?);
    let t = r.random_range(0.01..=1.0);
    let s = r.random_range(s_range.0..=s_range.1);
    let exps = [1.0, 1.5, 2.0, 4.0, f64::INFINITY];
    let p = exps[r.random_range(0..exps.len())];
    let q = exps[r.random_range(0..exps.len())];
    let spec = if r.random_bool(0.5) {
        SpaceSpec::fourier_lebesgue(q, s)
    } else {
        SpaceSpec::fourier_amalgam(p, q, s)
    };
    Ok((a, b, c, d, t, spec))
}

/// For `s < 0` the bilinear bound fails: products of two frequencies near
/// `±N` land on band 1, where the weight is not small.
pub fn bilinear_negative_s_counterexample(n: u64, s: f64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("bilinear_negative_s", "bilinear bound with s < 0 (expected to fail)");
        rep.informational = true;
        let grid = FrequencyGrid::torus(2 * n + 2)?;
        let one = Complex64::new(1.0, 0.0);
        let f = SpectralFunction::from_entries(grid, [(n as i64, one), (1 - n as i64, one)])?;
        let t = 0.1;
        let u = |tau: f64| linear_propagate(&f, tau);
        let (nv, _) = duhamel(u, u, t, &QuadratureSpec::default())?;
        let spec = SpaceSpec::fourier_lebesgue(2.0, s);
        let ratio = space_norm(&nv, &spec)? / (t * f.l1_norm() * space_norm(&f, &spec)?);
        rep.constant("measured_constant", ratio);
        rep.pass = ratio <= 1.0 + 1e-8;
        rep.sample = format!("u = v = U(tau)(delta_N + delta_(1-N)), N = {n}, FL^2_{s}, t = {t}");
        rep.witness = witness(&(f, t, spec));
        Ok(rep)
    })
}

// ------------------------------------------------------------ identities

/// `Φ` against its closed form.
pub fn identity_phase(cases: usize, seed: u64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("identity_phase", "-phi(x1+x2)+phi(x1)+phi(x2) equals the closed form");
        let mut r = rng(seed);
        let mut worst: f64 = 0.0;
        let mut at = (0.0, 0.0);
        for i in 0..cases {
            let scale = [1.0, 10.0, 1e3, 1e5][i % 4];
            let (x1, x2) = (r.random_range(-scale..=scale), r.random_range(-scale..=scale));
            let d = (-phi(x1 + x2) + phi(x1) + phi(x2) - phase_closed_form(x1, x2)).abs();
            if d > worst {
                worst = d;
                at = (x1, x2);
            }
        }
        let fixed = [phase_resonance(0.0, 0.0)?, phase_resonance(3.0, -3.0)?, phase_resonance(10.0, -9.0)?];
        rep.pass = worst <= IDENTITY_TOL && fixed[0] == 0.0 && fixed[1] == 0.0 && (0.5..=2.0).contains(&fixed[2].abs());
        rep.constant("max_abs_defect", worst);
        rep.constant("phase_10_m9", fixed[2]);
        rep.tolerance = IDENTITY_TOL;
        rep.seed = Some(seed);
        rep.sample = format!("{cases} pairs with |xi_i| up to 1e5");
        if !rep.pass {
            rep.witness = witness(&at);
        }
        Ok(rep)
    })
}

fn random_grid(r: &mut Rng) -> Result<FrequencyGrid> {
    if r.random_bool(0.5) {
        FrequencyGrid::torus(r.random_range(4..=24))
    } else {
        FrequencyGrid::line(r.random_range(2..=6), [1, 2, 4, 8][r.random_range(0..4)])
    }
}

fn random_function(grid: FrequencyGrid, r: &mut Rng) -> Result<SpectralFunction> {
    let band = grid.cutoff() as f64;
    random_band_limited(grid, band, 1.0, r.random_bool(0.5), r)
}

/// `U(t) U(t') = U(t + t')`.
pub fn identity_group_law(cases: usize, seed: u64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("identity_group_law", "U(t)U(t') = U(t+t')");
        let mut r = rng(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..cases {
            let f = random_function(random_grid(&mut r)?, &mut r)?;
            let (t1, t2) = (r.random_range(-10.0..=10.0), r.random_range(-10.0..=10.0));
            let lhs = linear_propagate(&linear_propagate(&f, t2), t1);
            let rhs = linear_propagate(&f, t1 + t2);
            let d = lhs.sub(&rhs)?.entries().iter().map(|e| e.1.norm()).fold(0.0, f64::max);
            worst = worst.max(d / f.max_abs_coeff().max(1e-300));
        }
        rep.pass = worst <= IDENTITY_TOL;
        rep.constant("max_rel_defect", worst);
        rep.tolerance = IDENTITY_TOL;
        rep.seed = Some(seed);
        rep.sample = format!("{cases} random functions on torus and line grids, |t| <= 10");
        Ok(rep)
    })
}

fn random_spec(r: &mut Rng) -> SpaceSpec {
    let exps = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    let p = exps[r.random_range(0..exps.len())];
    let q = exps[r.random_range(0..exps.len())];
    let s = r.random_range(-3.0..=3.0);
    let hom = r.random_bool(0.25);
    let spec = if r.random_bool(0.5) {
        SpaceSpec::fourier_lebesgue(q, s)
    } else {
        SpaceSpec::fourier_amalgam(p, q, s)
    };
    spec.with_homogeneous(hom)
}

/// `‖U(t) f‖_X = ‖f‖_X` for Fourier–Lebesgue and Fourier amalgam norms.
pub fn identity_norm_preservation(cases: usize, seed: u64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("identity_norm_preservation", "|U(t)f|_X = |f|_X");
        let mut r = rng(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..cases {
            let f = random_function(random_grid(&mut r)?, &mut r)?;
            let spec = random_spec(&mut r);
            let t = r.random_range(-20.0..=20.0);
            let a = space_norm(&f, &spec)?;
            let b = space_norm(&linear_propagate(&f, t), &spec)?;
            if a > 0.0 {
                worst = worst.max((a - b).abs() / a);
            }
        }
        rep.pass = worst <= IDENTITY_TOL;
        rep.constant("max_rel_defect", worst);
        rep.tolerance = IDENTITY_TOL;
        rep.seed = Some(seed);
        rep.sample = format!("{cases} random (function, space, t) on torus and line grids");
        Ok(rep)
    })
}

/// `Σ_n σ_n(ξ) = 1` for both partitions.
pub fn identity_partition(cases: usize, seed: u64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("identity_partition", "sum_n sigma_n(xi) = 1");
        let mut r = rng(seed);
        let mut worst: f64 = 0.0;
        for i in 0..cases {
            let xi = if i % 10 == 0 {
                // band edges and centers
                (r.random_range(-200..=200) as f64) * 0.5
            } else {
                r.random_range(-1e3..=1e3)
            };
            for p in [Partition::Sharp, Partition::Triangle] {
                let c = xi.round() as i64;
                let sum: f64 = (c - 2..=c + 2).map(|n| p.sigma(n, xi)).sum();
                worst = worst.max((sum - 1.0).abs());
            }
        }
        rep.pass = worst <= IDENTITY_TOL;
        rep.constant("max_abs_defect", worst);
        rep.tolerance = IDENTITY_TOL;
        rep.seed = Some(seed);
        rep.sample = format!("{cases} frequencies, sharp and triangle partitions");
        Ok(rep)
    })
}

pub fn identity_suite(cases: usize, seed: u64) -> Result<Vec<OracleReport>> {
    let jobs: Vec<Box<dyn Fn() -> Result<OracleReport> + Send + Sync>> = vec![
        Box::new(move || identity_phase(cases, seed)),
        Box::new(move || identity_group_law(cases, seed + 1)),
        Box::new(move || identity_norm_preservation(cases, seed + 2)),
        Box::new(move || identity_partition(cases, seed + 3)),
    ];
    jobs.par_iter().map(|j| j()).collect()
}

// ---------------------------------------------------------------- suites

pub fn inequality_suite(seed: u64) -> Result<Vec<OracleReport>> {
    let n_support: Vec<u64> = vec![16, 64, 512];
    let n_d0: Vec<u64> = (6..=11).map(|e| 1u64 << e).collect();
    let jobs: Vec<Box<dyn Fn() -> Result<OracleReport> + Send + Sync>> = vec![
        Box::new(move || check_bilinear(200, (0.0, 1.0), seed)),
        Box::new(|| bilinear_negative_s_counterexample(64, -1.0)),
        Box::new(move || {
            let mut r = check_embeddings(100, FrequencyGrid::torus(12)?, Partition::Sharp, seed + 1)?;
            r.id = "embeddings_torus".into();
            Ok(r)
        }),
        Box::new(move || {
            let mut r = check_embeddings(100, FrequencyGrid::line(8, 8)?, Partition::Sharp, seed + 2)?;
            r.id = "embeddings_line".into();
            Ok(r)
        }),
        Box::new(move || {
            let mut r = check_embeddings(100, FrequencyGrid::line(8, 8)?, Partition::Triangle, seed + 3)?;
            r.informational = true;
            r.id = "embeddings_line_triangle".into();
            Ok(r)
        }),
        Box::new(check_embedding_strict),
        Box::new(|| check_majorant(20)),
        Box::new(move || check_support_growth(&n_support, 4, 0.05, 2.0)),
        Box::new(|| check_picard_envelope(DEFAULT_C_HAT)),
        Box::new(move || check_d0(&n_d0, -1.0, SpaceSpec::fourier_amalgam(2.0, 2.0, -1.0), seed + 4)),
    ];
    jobs.par_iter().map(|j| j()).collect()
}

pub fn lower_bound_suite(seed: u64) -> Result<Vec<OracleReport>> {
    let n_list: Vec<u64> = (5..=10).map(|e| 1u64 << e).collect();
    let specs = [
        SpaceSpec::fourier_amalgam(2.0, 2.0, -1.0),
        SpaceSpec::fourier_amalgam(1.0, f64::INFINITY, -1.0),
        SpaceSpec::wiener_amalgam(2.0, -1.0),
    ];
    specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let mut r = check_d2(&n_list, -1.0, *spec, 0.1, 1000, seed + i as u64)?;
            r.id = format!("{}[{spec}]", r.id);
            Ok(r)
        })
        .collect()
}

// ------------------------------------------------------ cross-validation

/// One small-data comparison of the three solvers.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCase {
    pub seed: u64,
    pub t: f64,
    pub fl1: f64,
    pub series_vs_rk4: f64,
    pub series_vs_fixed_point: f64,
    pub rk4_vs_fixed_point: f64,
    pub tail: f64,
    pub quad_error: f64,
    pub rk4_error: f64,
    pub fixed_point_certificate: f64,
    pub pass: bool,
}

/// Series (K = 5) vs RK4 vs fixed point on random real data `|ξ| ≤ 4`. The
/// Galerkin grid holds the `K`-fold sumset, so the truncated solutions share
/// their first `K` iterates with the series and differ from it by at most
/// twice the tail.
pub fn cross_validate_case(seed: u64, t: f64, fl1: f64, c_hat: f64) -> Result<CrossCase> {
    let k = 5;
    let grid = FrequencyGrid::torus(k as u64 * 4 + 1)?;
    let mut r = rng(seed);
    let u0 = random_band_limited(grid, 4.0, 1.0, true, &mut r)?;
    let u0 = u0.scale(Complex64::new(fl1 / u0.l1_norm(), 0.0));
    let ps = picard_series(&u0, k, t, &QuadratureSpec::default(), c_hat)?;
    let (rk, rk_err) = rk4_error_estimate(&u0, t, 1e-3)?;
    let fp = fixed_point_solve(&u0, t, 200)?;
    let d_sr = ps.sum.sub(&rk)?.l1_norm();
    let d_sf = ps.sum.sub(&fp.value)?.l1_norm();
    let d_rf = rk.sub(&fp.value)?.l1_norm();
    let cert = fp.certificate();
    let slack = 1e-12;
    let pass = fp.converged
        && d_sr <= 2.0 * ps.tail_bound + ps.quad_error + rk_err + slack
        && d_sf <= 2.0 * ps.tail_bound + ps.quad_error + cert + slack
        && d_rf <= rk_err + cert + slack;
    Ok(CrossCase {
        seed,
        t,
        fl1,
        series_vs_rk4: d_sr,
        series_vs_fixed_point: d_sf,
        rk4_vs_fixed_point: d_rf,
        tail: ps.tail_bound,
        quad_error: ps.quad_error,
        rk4_error: rk_err,
        fixed_point_certificate: cert,
        pass,
    })
}

pub fn check_cross_validation(cases: usize, seed: u64, c_hat: f64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("solver_agreement", "series, RK4 and fixed point agree within certificates");
        let results: Vec<CrossCase> = (0..cases as u64)
            .into_par_iter()
            .map(|i| {
                let t = [0.01, 0.05, 0.1, 0.25, 0.5][i as usize % 5];
                let fl1 = [0.5, 1.0][(i as usize / 5) % 2];
                cross_validate_case(seed + i, t, fl1, c_hat)
            })
            .collect::<Result<_>>()?;
        rep.pass = results.iter().all(|c| c.pass);
        let ratio = |c: &CrossCase| c.series_vs_rk4 / (2.0 * c.tail + c.quad_error + c.rk4_error).max(1e-300);
        rep.constant("max_series_rk4", results.iter().map(|c| c.series_vs_rk4).fold(0.0, f64::max));
        rep.constant("max_series_fixed_point", results.iter().map(|c| c.series_vs_fixed_point).fold(0.0, f64::max));
        rep.constant("max_rk4_fixed_point", results.iter().map(|c| c.rk4_vs_fixed_point).fold(0.0, f64::max));
        rep.constant("max_distance_over_certificate", results.iter().map(ratio).fold(0.0, f64::max));
        rep.constant("c_hat", c_hat);
        rep.seed = Some(seed);
        rep.sample = format!("{cases} random real torus data, |xi| <= 4, |u0|_FL1 in {{0.5, 1}}, T in [0.01, 0.5]");
        if !rep.pass {
            rep.witness = witness(&results.iter().find(|c| !c.pass));
        }
        Ok(rep)
    })
}

/// Relative drift of `E = Σ (1+ξ²)|û|²` under RK4 over `[0, 1]`, `dt = 1e-3`.
pub fn check_energy(seed: u64) -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("energy_conservation", "RK4 conserves E = sum (1+xi^2)|u^|^2 over T = 1");
        let mut worst: f64 = 0.0;
        for (i, grid) in [FrequencyGrid::torus(40)?, FrequencyGrid::line(20, 4)?].into_iter().enumerate() {
            let u0 = smooth_profile(grid, seed + i as u64)?.scale(Complex64::new(0.5, 0.0));
            let tr = integrate_rk4(&u0, 1.0, 1e-3)?;
            let e0 = energy(&u0);
            for s in &tr.states {
                worst = worst.max((energy(s) - e0).abs() / e0);
            }
        }
        rep.pass = worst <= 1e-8;
        rep.constant("max_rel_drift", worst);
        rep.tolerance = 1e-8;
        rep.seed = Some(seed);
        rep.sample = "smooth real data (|u0|_FL1 = 1/2) on torus and line grids, dt = 1e-3".into();
        Ok(rep)
    })
}

pub fn solver_suite(seed: u64) -> Result<Vec<OracleReport>> {
    Ok(vec![check_cross_validation(10, seed, DEFAULT_C_HAT)?, check_energy(seed)?])
}

// ------------------------------------------------------------ degeneracy

/// `R = 0` produces no inflation: the row's norms equal those of the
/// unperturbed background evolved independently by RK4.
pub fn check_zero_amplitude() -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("zero_amplitude", "R = 0 reproduces the unperturbed evolution");
        let mut worst: f64 = 0.0;
        for base in [BaseData::Zero, BaseData::Smooth { seed: 1 }] {
            let cfg = InflationConfig {
                base: base.clone(),
                amplitude: Some(0.0),
                n_list: vec![64],
                ..InflationConfig::default()
            };
            let row = run_point(&cfg, 64, 1.0)?;
            let grid = cfg.grid_for(64)?;
            let u0 = match base {
                BaseData::Smooth { seed } => smooth_profile(grid, seed)?,
                _ => SpectralFunction::zero(grid),
            };
            let (rk, err) = rk4_error_estimate(&u0, row.t, cfg.rk4_dt)?;
            let tol = row.tail + row.quad_error + err + 1e-12;
            for (th, v) in cfg.thetas.iter().zip(&row.norms_theta) {
                let reference = space_norm(&rk, &cfg.space(*th))?;
                // FL^2_θ norms are 1-Lipschitz for θ ≤ 0 and bounded by ⟨4⟩^θ times ℱL¹ otherwise
                let scale = (17.0f64).powf(th.max(0.0) / 2.0);
                let d = (v - reference).abs();
                worst = worst.max(d / (scale * tol));
                if d > scale * tol {
                    rep.pass = false;
                }
            }
            if matches!(base, BaseData::Zero) {
                rep.pass &= row.norms_theta.iter().all(|&v| v == 0.0) && row.dist_s == 0.0;
            }
        }
        rep.constant("max_distance_over_tolerance", worst);
        rep.sample = "N = 64, zero and smooth backgrounds, theta in {-1, 0, 2}".into();
        Ok(rep)
    })
}

/// Infeasible `(s, r, ε)` are refused, each naming its violated condition.
pub fn check_schedule_rejection() -> Result<OracleReport> {
    timed(|| {
        let mut rep = OracleReport::new("schedule_rejection", "infeasible (s, r, eps) are refused");
        let cases: [(f64, f64, f64, &str); 6] = [
            (0.5, 0.1, 0.15, "s < 0"),
            (-1.0, -0.1, 0.5, "r > 0"),
            (-1.0, 0.3, -0.1, "eps > 0"),
            (-1.0, 1.2, 1.5, "r + s < 0"),
            (-1.0, 0.4, 0.3, "r < eps"),
            (-1.0, 0.3, 0.7, "eps < 2r"),
        ];
        let mut refused = 0;
        for (s, r, e, what) in cases {
            match schedule(s, 64, Some(r), Some(e)) {
                Err(Error::InfeasibleSchedule(msg)) if msg.contains(what) => refused += 1,
                other => {
                    rep.pass = false;
                    rep.witness = witness(&(s, r, e, format!("{other:?}")));
                }
            }
        }
        rep.pass &= schedule(-1.0, 64, None, None).is_ok();
        let cfg = InflationConfig {
            r: Some(0.4),
            eps: Some(0.3),
            ..InflationConfig::default()
        };
        rep.pass &= matches!(cfg.validate(), Err(Error::InfeasibleSchedule(_)));
        rep.constant("refused", refused as f64);
        rep.sample = "six infeasible exponent triples, the default schedule and an infeasible config".into();
        Ok(rep)
    })
}

pub fn degeneracy_suite() -> Result<Vec<OracleReport>> {
    Ok(vec![check_zero_amplitude()?, check_schedule_rejection()?])
}

// ------------------------------------------------------------------ verify

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Identities,
    Inequalities,
    LowerBounds,
    Solvers,
    Degeneracy,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "inequalities" => Suite::Inequalities,
            "lower-bounds" | "lower_bounds" => Suite::LowerBounds,
            "solvers" => Suite::Solvers,
            "degeneracy" => Suite::Degeneracy,
            "all" => Suite::All,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown suite `{other}` (identities, inequalities, lower-bounds, solvers, degeneracy, all)"
                )))
            }
        })
    }
}

/// Runs a suite with at least 1000 randomized identity cases.
pub fn verify(suite: Suite, seed: u64) -> Result<Vec<OracleReport>> {
    let cases = 1000;
    Ok(match suite {
        Suite::Identities => identity_suite(cases, seed)?,
        Suite::Inequalities => inequality_suite(seed)?,
        Suite::LowerBounds => lower_bound_suite(seed)?,
        Suite::Solvers => solver_suite(seed)?,
        Suite::Degeneracy => degeneracy_suite()?,
        Suite::All => {
            let mut all = identity_suite(cases, seed)?;
            all.extend(inequality_suite(seed)?);
            all.extend(lower_bound_suite(seed)?);
            all.extend(solver_suite(seed)?);
            all.extend(degeneracy_suite()?);
            all
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_examples() {
        assert_eq!(phase_resonance(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(phase_resonance(2.5, -2.5).unwrap(), 0.0);
        let p = phase_resonance(10.0, -9.0).unwrap();
        assert!((0.5..=2.0).contains(&p.abs()), "{p}");
        assert!((phase_resonance(1.0, 1.0).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn majorant_examples() {
        let b = majorant_sequence(1.0, 1.0, 6, MajorantVariant::Averaged).unwrap();
        assert!(b.iter().all(|&x| x == 1.0));
        let b = majorant_sequence(1.0, 1.0, 4, MajorantVariant::Plain).unwrap();
        assert_eq!(b, vec![1.0, 1.0, 2.0, 5.0]);
        assert!((majorant_c0(1.0, 1.0) - 6.5797362673929).abs() < 1e-12);
        let z = majorant_sequence(2.0, 0.0, 10, MajorantVariant::Plain).unwrap();
        assert!(z.iter().all(|&x| x == 0.0));
        assert!(majorant_sequence(1.0, 1.0, 1, MajorantVariant::Plain).is_err());
    }

    #[test]
    fn support_counts_match_sumsets() {
        // six points, then the sumset {±2N+{-2..2}} ∪ {-2..2} minus ξ = 0 (φ(0) = 0)
        let a = support_counts(16, 3, 0.05, 2.0).unwrap();
        let b = support_counts(40, 3, 0.05, 2.0).unwrap();
        assert_eq!(a[0], 6);
        assert_eq!(a[1], 14);
        assert_eq!(a, b);
    }

    #[test]
    fn minorant_counts_on_the_torus() {
        let v = minorant_values(10, FrequencyGrid::torus(1).unwrap()).unwrap();
        assert_eq!(v.iter().map(|p| p.1).collect::<Vec<_>>(), vec![4.0, 6.0, 4.0]);
    }

    #[test]
    fn resonant_integral_matches_closed_form() {
        let t = 0.01;
        for ph in [-0.7, 0.4, 1.3] {
            let v = resonant_integral(ph, t).unwrap();
            assert!((v - (t * ph).sin() / ph).abs() < 1e-16);
            assert!(v >= t / 2.0);
        }
    }

    #[test]
    fn embedding_strict_example() {
        assert!(check_embedding_strict().unwrap().pass);
    }

    #[test]
    fn bilinear_holds_on_a_few_cases_and_fails_for_negative_s() {
        assert!(check_bilinear(6, (0.0, 1.0), 3).unwrap().pass);
        let c = bilinear_negative_s_counterexample(32, -1.0).unwrap();
        assert!(!c.pass && c.informational);
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }
}
