//! Norm-inflation experiments.
//!
//! Data `u_{0,N} = u0 + φ_{0,N}` with `F φ_{0,N} = R χ_{I_N}`,
//! `I_N = [-N-1, -N+1] ∪ [N-1, N+1]`, evolved to time `T` under the
//! schedule `R = N^r`, `T = N^{-ε}`. The distance `‖φ_{0,N}‖_{X_s}` decays
//! like `N^{r+s}` while the band `n = 1` of the second Picard iterate grows
//! like `R²T = N^{2r-ε}`, whatever the regularity index used to weigh it.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    apply_phi, fixed_point_solve_with, linear_propagate, partial_sums_at_nodes, product, rk4_error_estimate,
    FixedPointOptions, PicardExpansion, DEFAULT_C_HAT,
};
use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, GridKind, DEFAULT_LINE_PER_UNIT};
use crate::quadrature::{QuadratureSpec, TimeMesh};
use crate::sampling::smooth_profile;
use crate::spaces::{band_restricted_norm, space_norm, Family, SpaceSpec};
use crate::spectral::{Overflow, SpectralFunction};

/// `R χ_{I_N}` on `grid`.
pub fn make_phi0n(n: u64, r: f64, grid: FrequencyGrid) -> Result<SpectralFunction> {
    if n + 1 > grid.cutoff() {
        return Err(Error::InvalidArgument(format!(
            "I_N reaches |xi| = {} beyond the grid cutoff {}",
            n + 1,
            grid.cutoff()
        )));
    }
    if r == 0.0 {
        return Ok(SpectralFunction::zero(grid));
    }
    let m = grid.per_unit() as i64;
    let (lo, hi) = ((n as i64 - 1) * m, (n as i64 + 1) * m);
    let c = Complex64::new(r, 0.0);
    let entries = (lo..=hi).flat_map(|j| [(-j, c), (j, c)]);
    SpectralFunction::from_entries(grid, entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Schedule {
    pub n: u64,
    pub r_amp: f64,
    pub t: f64,
    pub r: f64,
    pub eps: f64,
    /// `r + s`.
    pub distance_slope: f64,
    /// `2r - ε`.
    pub inflation_slope: f64,
}

/// Default exponents `(r, ε) = (-s/3, -s/2)`.
pub fn default_exponents(s: f64) -> (f64, f64) {
    (-s / 3.0, -s / 2.0)
}

/// Checks `s < 0`, `r > 0`, `ε > 0`, `r + s < 0`, `r < ε < 2r`.
pub fn check_exponents(s: f64, r: f64, eps: f64) -> Result<()> {
    let fail = |what: &str| Err(Error::InfeasibleSchedule(format!("{what} (s = {s}, r = {r}, eps = {eps})")));
    if !(s < 0.0) {
        return fail("s < 0 is required");
    }
    if !(r > 0.0) {
        return fail("r > 0 is required");
    }
    if !(eps > 0.0) {
        return fail("eps > 0 is required");
    }
    if !(r + s < 0.0) {
        return fail("r + s < 0 is violated");
    }
    if !(r < eps) {
        return fail("r < eps is violated (TR must vanish)");
    }
    if !(eps < 2.0 * r) {
        return fail("eps < 2r is violated (TR^2 must grow)");
    }
    Ok(())
}

/// `R = N^r`, `T = N^{-ε}`.
pub fn schedule(s: f64, n: u64, r: Option<f64>, eps: Option<f64>) -> Result<Schedule> {
    let (r0, e0) = default_exponents(s);
    let (r, eps) = (r.unwrap_or(r0), eps.unwrap_or(e0));
    check_exponents(s, r, eps)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("N = {n} must be at least 2")));
    }
    let nf = n as f64;
    Ok(Schedule {
        n,
        r_amp: nf.powf(r),
        t: nf.powf(-eps),
        r,
        eps,
        distance_slope: r + s,
        inflation_slope: 2.0 * r - eps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub label: &'static str,
    pub description: String,
    pub value: f64,
    pub threshold: f64,
    pub holds: bool,
}

/// Conditions (i)–(v) of the construction at one `N`. `a ≪ b` is read as
/// `a ≤ δ b`; `T ≪ 1` as `T ≤ t_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionFlags {
    pub conditions: Vec<Condition>,
}

impl ConditionFlags {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.conditions.iter().filter(|c| !c.holds).map(|c| c.label).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.label == label)
    }
}

const REL_SLACK: f64 = 1e-12;

#[allow(clippy::too_many_arguments)]
pub fn check_conditions(
    s: f64,
    r: f64,
    eps: f64,
    n: u64,
    m: f64,
    c: f64,
    delta: f64,
    t_max: f64,
) -> ConditionFlags {
    let nf = n as f64;
    let (ra, t) = (nf.powf(r), nf.powf(-eps));
    let le = |a: f64, b: f64| a <= b * (1.0 + REL_SLACK);
    let ge = |a: f64, b: f64| a >= b * (1.0 - REL_SLACK);
    let ci = c * ra * nf.powf(s);
    let tr = t * ra;
    let tr2 = t * ra * ra;
    ConditionFlags {
        conditions: vec![
            Condition {
                label: "i",
                description: "C R N^s < 1/m".into(),
                value: ci,
                threshold: 1.0 / m,
                holds: ci < 1.0 / m,
            },
            Condition {
                label: "ii",
                description: format!("T R <= {delta} (TR << 1)"),
                value: tr,
                threshold: delta,
                holds: le(tr, delta),
            },
            Condition {
                label: "iii",
                description: format!("T R^2 >= m/{delta} (TR^2 >> m)"),
                value: tr2,
                threshold: m / delta,
                holds: ge(tr2, m / delta),
            },
            Condition {
                label: "iv",
                description: "T R^2 >> T^2 R^3, equivalent to (ii)".into(),
                value: tr,
                threshold: delta,
                holds: le(tr, delta),
            },
            Condition {
                label: "v",
                description: format!("T <= {t_max} (0 < T << 1)"),
                value: t,
                threshold: t_max,
                holds: t > 0.0 && le(t, t_max),
            },
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    PicardSeries,
    Rk4,
    FixedPoint,
}

/// Background data `u0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BaseData {
    Zero,
    /// [`smooth_profile`] with the given seed.
    Smooth { seed: u64 },
    /// Spectrum CSV file.
    File { path: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InflationConfig {
    /// Data regularity (must be negative).
    pub s: f64,
    /// Target regularities.
    pub thetas: Vec<f64>,
    pub family: Family,
    pub p: f64,
    pub q: f64,
    pub homogeneous: bool,
    pub grid: GridKind,
    /// Line grids only: points per unit frequency.
    pub per_unit: u32,
    pub base: BaseData,
    pub n_list: Vec<u64>,
    /// Amplitude exponent; `-s/3` when absent.
    pub r: Option<f64>,
    /// Time exponent; `-s/2` when absent.
    pub eps: Option<f64>,
    /// Overrides `R = N^r` (for the `R = 0` degeneracy check).
    pub amplitude: Option<f64>,
    /// Target inflation factor.
    pub m: f64,
    /// `a ≪ b` means `a ≤ delta · b`.
    pub delta: f64,
    /// `T ≪ 1` means `T ≤ t_max`.
    pub t_max: f64,
    /// Constant of condition (i); calibrated from the sweep when absent.
    pub c_dist: Option<f64>,
    pub solver: Solver,
    pub k_max: usize,
    pub c_hat: f64,
    pub quad: QuadratureSpec,
    pub rk4_dt: f64,
    /// RK4 cross-check on every `rk4_check_stride`-th row (0 disables).
    pub rk4_check_stride: usize,
    /// Relative tolerance of slope assertions.
    pub slope_tol: f64,
}

impl Default for InflationConfig {
    fn default() -> Self {
        Self {
            s: -1.0,
            thetas: vec![-1.0, 0.0, 2.0],
            family: Family::FourierLebesgue,
            p: 2.0,
            q: 2.0,
            homogeneous: false,
            grid: GridKind::Torus,
            per_unit: DEFAULT_LINE_PER_UNIT,
            base: BaseData::Zero,
            n_list: (4..=12).map(|e| 1u64 << e).collect(),
            r: None,
            eps: None,
            amplitude: None,
            m: 2.0,
            delta: 0.5,
            t_max: 0.1,
            c_dist: None,
            solver: Solver::PicardSeries,
            k_max: 5,
            c_hat: DEFAULT_C_HAT,
            quad: QuadratureSpec::default(),
            rk4_dt: 1e-3,
            rk4_check_stride: 4,
            slope_tol: 0.25,
        }
    }
}

impl InflationConfig {
    pub fn exponents(&self) -> (f64, f64) {
        let (r0, e0) = default_exponents(self.s);
        (self.r.unwrap_or(r0), self.eps.unwrap_or(e0))
    }

    pub fn space(&self, s: f64) -> SpaceSpec {
        SpaceSpec {
            family: self.family,
            p: self.p,
            q: self.q,
            s,
            homogeneous: self.homogeneous,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (r, eps) = self.exponents();
        check_exponents(self.s, r, eps)?;
        self.space(self.s).validate()?;
        self.quad.validate()?;
        if self.n_list.is_empty() {
            return Err(Error::InvalidArgument("the N list is empty".into()));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("the N list must be strictly increasing".into()));
        }
        if self.n_list[0] < 2 {
            return Err(Error::InvalidArgument("N must be at least 2".into()));
        }
        if self.thetas.is_empty() {
            return Err(Error::InvalidArgument("the theta list is empty".into()));
        }
        if self.k_max < 2 {
            return Err(Error::InvalidArgument("k_max must be at least 2".into()));
        }
        if !(self.m > 0.0 && self.delta > 0.0 && self.t_max > 0.0 && self.c_hat > 0.0) {
            return Err(Error::InvalidArgument("m, delta, t_max and c_hat must be positive".into()));
        }
        Ok(())
    }

    /// Space label; torus runs carry the Fourier–Lebesgue name, since all
    /// four families coincide there.
    pub fn space_label(&self) -> String {
        let spec = self.space(self.s);
        match self.grid {
            GridKind::Torus => format!("FL^{}_s(T) [{}]", fmt_exp(self.q), spec),
            GridKind::Line => format!("{} on the line grid, h = 1/{}", spec, self.per_unit),
        }
    }

    fn base_data(&self, grid: FrequencyGrid) -> Result<SpectralFunction> {
        match &self.base {
            BaseData::Zero => Ok(SpectralFunction::zero(grid)),
            BaseData::Smooth { seed } => smooth_profile(grid, *seed),
            BaseData::File { path } => crate::spectrum_io::read_spectrum_file(path.as_ref(), grid),
        }
    }

    /// Frequency band `B` of the background data.
    fn base_band(&self) -> Result<u64> {
        Ok(match &self.base {
            BaseData::Zero => 0,
            BaseData::Smooth { .. } => 4,
            BaseData::File { path } => {
                let rows = crate::spectrum_io::read_rows(std::fs::File::open(path)?)?;
                rows.iter().map(|r| r.0.abs()).fold(0.0, f64::max).ceil() as u64
            }
        })
    }

    /// Grid admitting the `k_max`-fold sumsets of the data at `N`.
    pub fn grid_for(&self, n: u64) -> Result<FrequencyGrid> {
        let cutoff = self.k_max as u64 * (n + 1 + self.base_band()?) + 1;
        match self.grid {
            GridKind::Torus => FrequencyGrid::torus(cutoff),
            GridKind::Line => FrequencyGrid::line(cutoff, self.per_unit),
        }
    }
}

fn fmt_exp(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        v.to_string()
    }
}

/// One row of the report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub n: u64,
    pub r_amp: f64,
    pub t: f64,
    /// `‖u_{0,N} - u0‖_{X_s}`.
    pub dist_s: f64,
    /// `‖u_N(T)‖_{X_θ}` in the order of `thetas`.
    pub norms_theta: Vec<f64>,
    /// Band `n = 1` term of `‖u_N(T)‖_{X_s}`.
    pub band1: f64,
    /// Band `n = 1` term of `‖u_N(T)‖_{X_θ}`, per θ.
    pub band1_theta: Vec<f64>,
    /// `‖U_1[u_{0,N}](T)‖_{X_s}`.
    pub u1_norm_s: f64,
    /// Band `n = 1` term of `U_2[u_{0,N}](T)` in `X_s`.
    pub u2_band1: f64,
    /// `‖U_2[u_{0,N}](T)‖_{X_s}`.
    pub u2_norm_s: f64,
    /// `Σ_{3 ≤ k ≤ K} ‖U_k‖_{X_s}` plus the tail bound.
    pub higher_bound_s: f64,
    /// Geometric tail certificate of the series (ℱL¹).
    pub tail: f64,
    pub quad_error: f64,
    /// Solver residual: `‖u_K(T) - Ψ(u_K)(T)‖_{ℱL¹}` for the series,
    /// last iterate change for the fixed point, step-halving estimate for RK4.
    pub residual: f64,
    /// `u2_band1 / (u1_norm_s + tail)`.
    pub dominance: f64,
    /// ℱL¹ distance to the RK4 cross-check, if run.
    pub rk4_distance: Option<f64>,
    pub conditions: ConditionFlags,
    pub flags: Vec<String>,
    pub elapsed_s: f64,
}

/// Solution `u(T)` together with the data needed by the report.
struct Solved {
    value: SpectralFunction,
    tail: f64,
    quad_error: f64,
    residual: f64,
    expansion: Option<PicardExpansion>,
}

/// `‖u_K(T) - Ψ(u_K)(T)‖_{ℱL¹}` with `u_K(τ) = Σ_{k ≤ K} U_k(τ)` built on the
/// accepted mesh; products beyond the grid are truncated.
fn series_residual(
    u0: &SpectralFunction,
    k_max: usize,
    exp: &PicardExpansion,
    nodes_per_panel: usize,
) -> Result<f64> {
    let t = exp.t;
    if t == 0.0 || u0.is_zero() {
        return Ok(0.0);
    }
    let grid = *u0.grid();
    let mesh = TimeMesh::new(t, exp.panels.max(1), nodes_per_panel)?;
    let times = mesh.times();
    let weights = mesh.weights();
    let sums = partial_sums_at_nodes(u0, k_max, &mesh)?;
    let integrand: Vec<SpectralFunction> = sums
        .par_iter()
        .zip(times.par_iter())
        .map(|(u, &tau)| Ok(linear_propagate(&apply_phi(&product(u, u, Overflow::Truncate)?), t - tau)))
        .collect::<Result<_>>()?;
    let terms: Vec<_> = weights.iter().zip(&integrand).map(|(&w, f)| (Complex64::new(w, 0.0), f)).collect();
    let duh = SpectralFunction::linear_combination(grid, &terms).scale(Complex64::new(0.0, -0.5));
    let psi = linear_propagate(u0, t).add(&duh)?;
    Ok(psi.sub(&exp.partial_sum(k_max))?.l1_norm())
}

fn solve(cfg: &InflationConfig, data: &SpectralFunction, t: f64) -> Result<Solved> {
    let m = data.l1_norm();
    match cfg.solver {
        Solver::PicardSeries => {
            let rho = cfg.c_hat * t * m;
            if rho >= 1.0 {
                return Err(Error::ConvergenceRegime { rho });
            }
            let exp = PicardExpansion::compute(data, cfg.k_max, t, &cfg.quad)?;
            let residual = series_residual(data, cfg.k_max, &exp, cfg.quad.base_nodes)?;
            Ok(Solved {
                value: exp.partial_sum(cfg.k_max),
                tail: crate::dynamics::tail_bound(m, t, cfg.k_max, cfg.c_hat),
                quad_error: exp.quad_error_sum(cfg.k_max),
                residual,
                expansion: Some(exp),
            })
        }
        Solver::Rk4 => {
            let (value, err) = rk4_error_estimate(data, t, cfg.rk4_dt)?;
            let exp = PicardExpansion::compute(data, 2, t, &cfg.quad)?;
            Ok(Solved {
                value,
                tail: 0.0,
                quad_error: 0.0,
                residual: err,
                expansion: Some(exp),
            })
        }
        Solver::FixedPoint => {
            let fp = fixed_point_solve_with(data, t, 200, &FixedPointOptions::default())?;
            let exp = PicardExpansion::compute(data, 2, t, &cfg.quad)?;
            Ok(Solved {
                residual: fp.distances.last().copied().unwrap_or(0.0),
                value: fp.value,
                tail: 0.0,
                quad_error: fp.quad_error,
                expansion: Some(exp),
            })
        }
    }
}

/// Computes one row. Failed conditions are recorded as flags; solver
/// errors propagate.
pub fn run_point(cfg: &InflationConfig, n: u64, c_dist: f64) -> Result<ReportRow> {
    let start = std::time::Instant::now();
    let sched = schedule(cfg.s, n, cfg.r, cfg.eps)?;
    let r_amp = cfg.amplitude.unwrap_or(sched.r_amp);
    let t = sched.t;
    let grid = cfg.grid_for(n)?;
    let u0 = cfg.base_data(grid)?;
    let phi = make_phi0n(n, r_amp, grid)?;
    let data = u0.add(&phi)?;
    let xs = cfg.space(cfg.s);

    let dist_s = space_norm(&phi, &xs)?;
    let solved = solve(cfg, &data, t)?;
    let u_t = &solved.value;
    let norms_theta = cfg
        .thetas
        .iter()
        .map(|&th| space_norm(u_t, &cfg.space(th)))
        .collect::<Result<Vec<_>>>()?;
    let band1 = band_restricted_norm(u_t, &xs, 1)?;
    let band1_theta = cfg
        .thetas
        .iter()
        .map(|&th| band_restricted_norm(u_t, &cfg.space(th), 1))
        .collect::<Result<Vec<_>>>()?;

    let exp = solved.expansion.as_ref().expect("every solver fills the expansion");
    let u1_norm_s = space_norm(exp.iterate(1), &xs)?;
    let u2_norm_s = space_norm(exp.iterate(2), &xs)?;
    let u2_band1 = band_restricted_norm(exp.iterate(2), &xs, 1)?;
    let mut higher_bound_s = solved.tail;
    for k in 3..=exp.kmax() {
        higher_bound_s += space_norm(exp.iterate(k), &xs)?;
    }
    let dominance = u2_band1 / (u1_norm_s + solved.tail);

    let conditions = check_conditions(cfg.s, sched.r, sched.eps, n, cfg.m, c_dist, cfg.delta, cfg.t_max);
    let mut flags: Vec<String> = conditions.failed().iter().map(|l| format!("cond_{l}")).collect();
    let certificate = solved.tail + solved.quad_error;
    if cfg.solver == Solver::PicardSeries && solved.residual > certificate + 1e-12 {
        flags.push("residual".into());
    }
    Ok(ReportRow {
        n,
        r_amp,
        t,
        dist_s,
        norms_theta,
        band1,
        band1_theta,
        u1_norm_s,
        u2_band1,
        u2_norm_s,
        higher_bound_s,
        tail: solved.tail,
        quad_error: solved.quad_error,
        residual: solved.residual,
        dominance,
        rk4_distance: None,
        conditions,
        flags,
        elapsed_s: start.elapsed().as_secs_f64(),
    })
}

/// RK4 cross-check of a row: the Galerkin system on the row's grid shares
/// its first `K` iterates with the series, so the two solutions differ by
/// at most twice the tail plus the quadrature and step errors.
pub fn rk4_cross_check(cfg: &InflationConfig, row: &mut ReportRow) -> Result<()> {
    let grid = cfg.grid_for(row.n)?;
    let data = cfg.base_data(grid)?.add(&make_phi0n(row.n, row.r_amp, grid)?)?;
    let exp = PicardExpansion::compute(&data, cfg.k_max, row.t, &cfg.quad)?;
    let (rk, err) = rk4_error_estimate(&data, row.t, cfg.rk4_dt)?;
    let dist = rk.sub(&exp.partial_sum(cfg.k_max))?.l1_norm();
    let tail = crate::dynamics::tail_bound(data.l1_norm(), row.t, cfg.k_max, cfg.c_hat);
    row.rk4_distance = Some(dist);
    if dist > 2.0 * tail + exp.quad_error_sum(cfg.k_max) + err + 1e-12 {
        row.flags.push("rk4_mismatch".into());
    }
    Ok(())
}

/// Least-squares slope of `log y` against `log x`; `None` with fewer than
/// two positive points.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone, Serialize)]
pub struct SlopeCheck {
    pub name: String,
    pub fitted: f64,
    pub expected: f64,
    pub tol: f64,
    pub pass: bool,
}

impl SlopeCheck {
    fn new(name: String, fitted: Option<f64>, expected: f64, tol: f64) -> Self {
        let f = fitted.unwrap_or(f64::NAN);
        Self {
            name,
            fitted: f,
            expected,
            tol,
            pass: (f - expected).abs() <= tol * expected.abs(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InflationReport {
    pub config: InflationConfig,
    pub space: String,
    pub r: f64,
    pub eps: f64,
    pub c_dist: f64,
    pub rows: Vec<ReportRow>,
    pub distance_slope: SlopeCheck,
    /// Full-norm growth slopes per θ.
    pub norm_slopes: Vec<SlopeCheck>,
    /// Band-1 witness slopes per θ.
    pub band1_slopes: Vec<SlopeCheck>,
    /// Smallest `N` with distance below `1/m` and every θ-norm above `m`,
    /// beyond which all rows keep that property with increasing norms.
    pub n_star: Option<u64>,
    /// Dominance ratio at the largest `N` whose conditions all hold (or the
    /// largest `N` when none do).
    pub dominance_at_largest_feasible: f64,
    pub largest_feasible_n: Option<u64>,
}

impl InflationReport {
    /// Slope assertions: distance, full norms and band-1 witnesses.
    pub fn slopes_pass(&self) -> bool {
        self.distance_slope.pass
            && self.norm_slopes.iter().all(|s| s.pass)
            && self.band1_slopes.iter().all(|s| s.pass)
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("space: {}\n", self.space));
        out.push_str(&format!(
            "schedule: r = {:.6}, eps = {:.6}, distance slope r+s = {:.6}, inflation slope 2r-eps = {:.6}\n",
            self.r,
            self.eps,
            self.r + self.config.s,
            2.0 * self.r - self.eps
        ));
        out.push_str(&format!("condition (i) constant C = {:.6}\n", self.c_dist));
        let line = |s: &SlopeCheck| {
            format!(
                "  {:<28} fitted {:>10.6}  expected {:>10.6} ± {:.0}%  {}\n",
                s.name,
                s.fitted,
                s.expected,
                100.0 * s.tol,
                if s.pass { "PASS" } else { "FAIL" }
            )
        };
        out.push_str("slopes:\n");
        out.push_str(&line(&self.distance_slope));
        for s in self.norm_slopes.iter().chain(&self.band1_slopes) {
            out.push_str(&line(s));
        }
        match self.n_star {
            Some(n) => out.push_str(&format!("N* = {n}\n")),
            None => out.push_str("N* = none in range\n"),
        }
        out.push_str(&format!(
            "dominance U2 band-1 / (|U1|_Xs + tail) at N = {}: {:.4}\n",
            self.largest_feasible_n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
            self.dominance_at_largest_feasible
        ));
        out
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["N", "R", "T", "dist_s"].iter().map(|s| s.to_string()).collect();
        for th in &self.config.thetas {
            h.push(format!("norm_theta_{th}"));
        }
        for s in ["band1", "tail", "residual", "flags"] {
            h.push(s.into());
        }
        h
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(self.csv_header()).map_err(io)?;
        for row in &self.rows {
            let mut rec = vec![
                row.n.to_string(),
                row.r_amp.to_string(),
                row.t.to_string(),
                row.dist_s.to_string(),
            ];
            rec.extend(row.norms_theta.iter().map(|v| v.to_string()));
            rec.push(row.band1.to_string());
            rec.push(row.tail.to_string());
            rec.push(row.residual.to_string());
            rec.push(row.flags.join(";"));
            w.write_record(rec).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `max_N ‖φ_{0,N}‖_{X_s} / (R N^s)` over the configured `N` list.
pub fn calibrate_distance_constant(cfg: &InflationConfig) -> Result<f64> {
    let xs = cfg.space(cfg.s);
    let mut c: f64 = 0.0;
    for &n in &cfg.n_list {
        let sched = schedule(cfg.s, n, cfg.r, cfg.eps)?;
        let grid = match cfg.grid {
            GridKind::Torus => FrequencyGrid::torus(n + 2)?,
            GridKind::Line => FrequencyGrid::line(n + 2, cfg.per_unit)?,
        };
        let phi = make_phi0n(n, sched.r_amp, grid)?;
        c = c.max(space_norm(&phi, &xs)? / (sched.r_amp * (n as f64).powf(cfg.s)));
    }
    Ok(c)
}

fn find_n_star(rows: &[ReportRow], m: f64) -> Option<u64> {
    let good = |r: &ReportRow| r.dist_s < 1.0 / m && r.norms_theta.iter().all(|&v| v > m);
    (0..rows.len())
        .find(|&i| {
            rows[i..].iter().all(good)
                && rows[i..].windows(2).all(|w| {
                    w[0].dist_s > w[1].dist_s
                        && w[0].norms_theta.iter().zip(&w[1].norms_theta).all(|(a, b)| b > a)
                })
        })
        .map(|i| rows[i].n)
}

pub fn run_sweep(cfg: &InflationConfig) -> Result<InflationReport> {
    cfg.validate()?;
    let (r, eps) = cfg.exponents();
    let c_dist = match cfg.c_dist {
        Some(c) => c,
        None => calibrate_distance_constant(cfg)?,
    };
    let mut rows: Vec<ReportRow> = cfg
        .n_list
        .par_iter()
        .map(|&n| run_point(cfg, n, c_dist))
        .collect::<Result<_>>()?;
    if cfg.rk4_check_stride > 0 && cfg.solver == Solver::PicardSeries {
        let last = rows.len() - 1;
        rows.par_iter_mut()
            .enumerate()
            .filter(|(i, _)| i % cfg.rk4_check_stride == 0 || *i == last)
            .try_for_each(|(_, row)| rk4_cross_check(cfg, row))?;
    }

    let ns: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let tol = cfg.slope_tol;
    let dist: Vec<f64> = rows.iter().map(|r| r.dist_s).collect();
    let distance_slope = SlopeCheck::new("distance".into(), loglog_slope(&ns, &dist), r + cfg.s, tol);
    let mut norm_slopes = Vec::new();
    let mut band1_slopes = Vec::new();
    for (i, th) in cfg.thetas.iter().enumerate() {
        let full: Vec<f64> = rows.iter().map(|r| r.norms_theta[i]).collect();
        let b1: Vec<f64> = rows.iter().map(|r| r.band1_theta[i]).collect();
        norm_slopes.push(SlopeCheck::new(format!("norm theta={th}"), loglog_slope(&ns, &full), 2.0 * r - eps, tol));
        band1_slopes.push(SlopeCheck::new(format!("band-1 witness theta={th}"), loglog_slope(&ns, &b1), 2.0 * r - eps, tol));
    }
    let feasible = rows.iter().rev().find(|r| r.conditions.all_hold());
    let chosen = feasible.or(rows.last());
    Ok(InflationReport {
        config: cfg.clone(),
        space: cfg.space_label(),
        r,
        eps,
        c_dist,
        n_star: find_n_star(&rows, cfg.m),
        dominance_at_largest_feasible: chosen.map(|r| r.dominance).unwrap_or(f64::NAN),
        largest_feasible_n: feasible.map(|r| r.n),
        distance_slope,
        norm_slopes,
        band1_slopes,
        rows,
    })
}

/// Per-θ band-1 witness values keyed by θ, for quick inspection.
pub fn band1_table(report: &InflationReport) -> BTreeMap<String, Vec<f64>> {
    report
        .config
        .thetas
        .iter()
        .enumerate()
        .map(|(i, th)| (th.to_string(), report.rows.iter().map(|r| r.band1_theta[i]).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi0n_on_torus_and_line() {
        let g = FrequencyGrid::torus(30).unwrap();
        let f = make_phi0n(10, 2.0, g).unwrap();
        let idx: Vec<i64> = f.entries().iter().map(|e| e.0).collect();
        assert_eq!(idx, vec![-11, -10, -9, 9, 10, 11]);
        assert!(f.entries().iter().all(|e| e.1 == Complex64::new(2.0, 0.0)));
        assert_eq!(f.l1_norm(), 12.0);
        let line = FrequencyGrid::line(30, 8).unwrap();
        assert_eq!(make_phi0n(10, 1.0, line).unwrap().nnz(), 34);
        assert!(make_phi0n(30, 1.0, g).is_err());
    }

    #[test]
    fn schedule_examples() {
        let s = schedule(-1.0, 4096, None, None).unwrap();
        assert!((s.r_amp - 16.0).abs() < 1e-12);
        assert!((s.t - 1.0 / 64.0).abs() < 1e-15);
        assert!((s.t * s.r_amp - 0.25).abs() < 1e-12);
        assert!((s.t * s.r_amp * s.r_amp - 4.0).abs() < 1e-11);
        assert!((s.distance_slope + 2.0 / 3.0).abs() < 1e-15);
        assert!((s.inflation_slope - 1.0 / 6.0).abs() < 1e-15);
        assert!(schedule(-3.0, 16, None, None).is_ok());
        let (r, e) = default_exponents(-3.0);
        assert!(r == 1.0 && e == 1.5);
    }

    #[test]
    fn infeasible_exponents_name_the_condition() {
        let msg = |r, e| schedule(-1.0, 64, Some(r), Some(e)).unwrap_err().to_string();
        assert!(msg(0.4, 0.3).contains("r < eps"));
        assert!(msg(0.3, 0.7).contains("eps < 2r"));
        assert!(msg(1.2, 1.5).contains("r + s < 0"));
        assert!(schedule(0.5, 64, None, None).unwrap_err().to_string().contains("s < 0"));
    }

    #[test]
    fn condition_examples() {
        let c = check_conditions(-1.0, 1.0 / 3.0, 0.5, 4096, 2.0, 3.0, 0.5, 0.1);
        let ci = c.get("i").unwrap();
        assert!((ci.value - 3.0 * 16.0 / 4096.0).abs() < 1e-12 && ci.holds);
        assert!(c.all_hold());
        let small = check_conditions(-1.0, 1.0 / 3.0, 0.5, 16, 8.0, 3.0, 0.5, 0.1);
        assert!(!small.get("iii").unwrap().holds);
        assert_eq!(small.get("iv").unwrap().holds, small.get("ii").unwrap().holds);
    }

    #[test]
    fn slope_fit_recovers_power_law() {
        let x: Vec<f64> = (1..8).map(|k| (1u64 << k) as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v.powf(-0.4)).collect();
        assert!((loglog_slope(&x, &y).unwrap() + 0.4).abs() < 1e-12);
    }
}
