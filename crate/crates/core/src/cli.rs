//! Command-line front end: `norm`, `picard`, `sweep`, `verify`, `simulate`.
//!
//! Exit codes: 0 success, 1 failed assertion (or numerical failure),
//! 2 usage or configuration error. `BBMLAB_THREADS` sets the worker count.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::{RunConfig, RunManifest};
use crate::dynamics::{energy, integrate_rk4_with, picard_iterate, tail_bound, DEFAULT_C_HAT};
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::inflation::{make_phi0n, run_sweep};
use crate::oracles::{suite_passes, verify, OracleReport, Suite};
use crate::spaces::{sobolev_norm, space_norm_with, Partition, SpaceSpec};
use crate::spectrum_io::{read_rows, rows_to_function, write_spectrum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bbmlab", version, about = "Norm inflation experiments for the BBM equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norm of a spectrum file in a function space.
    Norm(NormArgs),
    /// k-th Picard iterate of the inflation data.
    Picard(PicardArgs),
    /// N-sweep of the inflation experiment.
    Sweep(SweepArgs),
    /// Estimate oracles.
    Verify(VerifyArgs),
    /// RK4 trajectory with energy and norm time series.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Torus,
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionArg {
    Sharp,
    Triangle,
}

impl From<PartitionArg> for Partition {
    fn from(p: PartitionArg) -> Self {
        match p {
            PartitionArg::Sharp => Partition::Sharp,
            PartitionArg::Triangle => Partition::Triangle,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, value_enum, default_value = "torus")]
    pub grid: GridArg,
    /// Points per unit frequency on the line grid.
    #[arg(long, default_value_t = 8)]
    pub per_unit: u32,
    /// Frequency cutoff; derived from the data when absent.
    #[arg(long)]
    pub cutoff: Option<u64>,
}

impl GridArgs {
    fn build(&self, cutoff: u64) -> Result<FrequencyGrid> {
        let cutoff = self.cutoff.unwrap_or(cutoff).max(1);
        match self.grid {
            GridArg::Torus => FrequencyGrid::torus(cutoff),
            GridArg::Line => FrequencyGrid::line(cutoff, self.per_unit),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct NormArgs {
    /// Spectrum CSV with header `xi,re,im`.
    pub input: PathBuf,
    /// Space as `family:p:q:s[:hom]`, e.g. `fa:2:2:-1`.
    #[arg(long)]
    pub spec: String,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value = "triangle")]
    pub partition: PartitionArg,
}

#[derive(Debug, Clone, Args)]
pub struct PicardArgs {
    #[arg(long = "N")]
    pub n: u64,
    #[arg(long = "R", allow_hyphen_values = true)]
    pub r: f64,
    #[arg(long)]
    pub k: usize,
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: f64,
    /// Spaces for the norms table (repeatable).
    #[arg(long = "spec", default_values_t = vec!["fl:1:1:0".to_string(), "fa:2:2:-1".to_string()])]
    pub specs: Vec<String>,
    /// Spectrum CSV for F U_k(T); a manifest is written next to it.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// TOML config supplying `quad.*` and `picard.c_hat`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "torus")]
    pub grid: GridArg,
    #[arg(long, default_value_t = 8)]
    pub per_unit: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// TOML config; defaults throughout when absent.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Report CSV (a manifest is written next to it).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Full report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Rerun the configuration recorded in a manifest.
    #[arg(long, conflicts_with = "config")]
    pub replay: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// identities, inequalities, lower-bounds, solvers, degeneracy or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Report file: JSON for `.json`, CSV otherwise.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1e-3, allow_hyphen_values = true)]
    pub dt: f64,
    /// Spectrum CSV of the initial data.
    #[arg(long)]
    pub input: PathBuf,
    /// Time-series CSV `t,E,fl1,hs`; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Sobolev index of the `hs` column.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub s: f64,
    /// Record every n-th step.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    #[command(flatten)]
    pub grid: GridArgs,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_)
        | Error::Config(_)
        | Error::Parse { .. }
        | Error::InvalidSpace(_)
        | Error::InfeasibleSchedule(_)
        | Error::Io(_)
        | Error::InvalidGrid(_)
        | Error::OutOfGrid { .. }
        | Error::Undersampled { .. } => EXIT_USAGE,
        _ => EXIT_ASSERTION,
    }
}

/// `x` with 15 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        format!("{:.*}", (14 - mag).max(0) as usize, x)
    } else {
        format!("{x:.14e}")
    }
}

/// Reads `BBMLAB_THREADS` and sizes the global pool once.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("BBMLAB_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("BBMLAB_THREADS = `{v}` is not a thread count")))?;
        // a second initialization (tests) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command, returns the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    match run(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Norm(a) => cmd_norm(a, out),
        Command::Picard(a) => cmd_picard(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?))
}

fn read_input(path: &Path, grid_args: &GridArgs, margin: u64) -> Result<crate::spectral::SpectralFunction> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let rows = read_rows(file)?;
    let top = rows.iter().map(|r| r.0.abs()).fold(0.0, f64::max).ceil() as u64;
    let grid = grid_args.build(margin * top.max(1))?;
    rows_to_function(grid, &rows)
}

pub fn cmd_norm(a: &NormArgs, out: &mut dyn Write) -> Result<i32> {
    let spec: SpaceSpec = a.spec.parse()?;
    let f = read_input(&a.input, &a.grid, 1)?;
    let v = space_norm_with(&f, &spec, a.partition.into())?;
    writeln!(out, "{}", fmt_sig(v))?;
    Ok(EXIT_OK)
}

pub fn cmd_picard(a: &PicardArgs, out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let cfg = match &a.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg.quad.validate()?;
    if a.k == 0 {
        return Err(Error::InvalidArgument("--k must be at least 1".into()));
    }
    let specs = a.specs.iter().map(|s| s.parse::<SpaceSpec>()).collect::<Result<Vec<_>>>()?;
    let cutoff = a.k as u64 * (a.n + 1) + 1;
    let grid = match a.grid {
        GridArg::Torus => FrequencyGrid::torus(cutoff)?,
        GridArg::Line => FrequencyGrid::line(cutoff, a.per_unit)?,
    };
    let u0 = make_phi0n(a.n, a.r, grid)?;
    let res = picard_iterate(&u0, a.k, a.t, &cfg.quad)?;
    writeln!(out, "space,norm")?;
    for spec in &specs {
        writeln!(out, "{spec},{}", fmt_sig(space_norm_with(&res.value, spec, Partition::default())?))?;
    }
    writeln!(out, "quad_error,{:.3e}", res.quad_error)?;
    let c_hat = if a.config.is_some() { cfg.picard.c_hat } else { DEFAULT_C_HAT };
    writeln!(out, "tail_bound_after_k,{:.6e}", tail_bound(u0.l1_norm(), a.t, a.k, c_hat))?;
    if let Some(path) = &a.output {
        write_spectrum(create(path)?, &res.value)?;
        let mut m = RunManifest::new(
            "picard",
            json!({"N": a.n, "R": a.r, "k": a.k, "T": a.t, "spec": a.specs, "grid": format!("{:?}", a.grid), "per_unit": a.per_unit}),
        );
        m.config = Some(cfg);
        m.inputs = a.config.iter().cloned().collect();
        m.outputs = vec![path.clone()];
        m.wall_clock_s = start.elapsed().as_secs_f64();
        m.write(&RunManifest::path_for(path))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let (cfg, inputs) = match (&a.replay, &a.config) {
        (Some(p), _) => {
            let m = RunManifest::load(p)?;
            if m.subcommand != "sweep" {
                return Err(Error::Config(format!("{} records a `{}` run, not a sweep", p.display(), m.subcommand)));
            }
            let cfg = m.config.ok_or_else(|| Error::Config(format!("{} carries no config", p.display())))?;
            (cfg, vec![p.clone()])
        }
        (None, Some(p)) => (RunConfig::load(p)?, vec![p.clone()]),
        (None, None) => (RunConfig::default(), vec![]),
    };
    cfg.validate()?;
    let report = run_sweep(&cfg.inflation())?;
    write!(out, "{}", report.summary())?;
    match &a.output {
        Some(path) => {
            report.write_csv(create(path)?)?;
            let mut m = RunManifest::new("sweep", json!({"output": path, "json": a.json}));
            m.config = Some(cfg.clone());
            m.seed = Some(cfg.seed);
            m.inputs = inputs;
            m.outputs = std::iter::once(path.clone()).chain(a.json.clone()).collect();
            m.wall_clock_s = start.elapsed().as_secs_f64();
            m.write(&RunManifest::path_for(path))?;
        }
        None => report.write_csv(&mut *out)?,
    }
    if let Some(path) = &a.json {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &report).map_err(|e| Error::Io(e.to_string()))?;
        w.flush()?;
    }
    Ok(if report.slopes_pass() { EXIT_OK } else { EXIT_ASSERTION })
}

fn write_reports(path: &Path, reports: &[OracleReport]) -> Result<()> {
    let mut w = create(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        serde_json::to_writer_pretty(&mut w, reports).map_err(|e| Error::Io(e.to_string()))?;
    } else {
        let mut c = csv::Writer::from_writer(&mut w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        c.write_record(["id", "pass", "informational", "seed", "constants"]).map_err(io)?;
        for r in reports {
            let consts = serde_json::to_string(&r.constants).map_err(|e| Error::Io(e.to_string()))?;
            let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
            c.write_record([r.id.as_str(), &r.pass.to_string(), &r.informational.to_string(), &seed, &consts])
                .map_err(io)?;
        }
        c.flush()?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let reports = verify(suite, a.seed)?;
    for r in &reports {
        writeln!(out, "{}", r.line())?;
    }
    let pass = suite_passes(&reports);
    writeln!(out, "{} ({} oracles, seed {})", if pass { "PASS" } else { "FAIL" }, reports.len(), a.seed)?;
    if let Some(path) = &a.output {
        write_reports(path, &reports)?;
    }
    Ok(if pass { EXIT_OK } else { EXIT_ASSERTION })
}

pub fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    // room for the quadratic interaction of the data with itself
    let u0 = read_input(&a.input, &a.grid, 4)?;
    let tr = integrate_rk4_with(&u0, a.t, a.dt, a.stride)?;
    let e0 = energy(&u0);
    let mut drift: f64 = 0.0;
    let mut body = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut body);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["t", "E", "fl1", "hs"]).map_err(io)?;
        for (t, u) in tr.times.iter().zip(&tr.states) {
            let e = energy(u);
            if e0 > 0.0 {
                drift = drift.max((e - e0).abs() / e0);
            }
            w.write_record([t.to_string(), e.to_string(), u.l1_norm().to_string(), sobolev_norm(u, a.s).to_string()])
                .map_err(io)?;
        }
        w.flush()?;
    }
    match &a.output {
        Some(path) => {
            let mut f = create(path)?;
            f.write_all(&body)?;
            f.flush()?;
            let mut m = RunManifest::new(
                "simulate",
                json!({"T": a.t, "dt": a.dt, "s": a.s, "stride": a.stride, "grid": format!("{:?}", a.grid.grid),
                       "per_unit": a.grid.per_unit, "cutoff": u0.grid().cutoff()}),
            );
            m.inputs = vec![a.input.clone()];
            m.outputs = vec![path.clone()];
            m.wall_clock_s = start.elapsed().as_secs_f64();
            m.write(&RunManifest::path_for(path))?;
            writeln!(out, "{} samples (dt {:.3e}), max relative energy drift {drift:.3e}", tr.times.len(), tr.dt)?;
        }
        None => out.write_all(&body)?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(1.0), "1.00000000000000");
        assert_eq!(fmt_sig(1.0 / 26f64.sqrt()), "0.196116135138184");
        assert_eq!(fmt_sig(6.0), "6.00000000000000");
        assert_eq!(fmt_sig(123456.0), "123456.000000000");
        assert_eq!(fmt_sig(0.0), "0");
    }

    #[test]
    fn usage_errors_map_to_two() {
        let mut sink = Vec::new();
        assert_eq!(run_from(["bbmlab", "frobnicate"], &mut sink), EXIT_USAGE);
        assert_eq!(run_from(["bbmlab", "verify", "--suite", "bogus"], &mut sink), EXIT_USAGE);
        assert_eq!(exit_code(&Error::ConvergenceRegime { rho: 2.0 }), EXIT_ASSERTION);
    }
}
