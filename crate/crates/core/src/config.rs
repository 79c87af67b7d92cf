//! TOML run configuration and the JSON manifest written next to outputs.
//!
//! ```toml
//! seed = 1
//!
//! [quad]
//! base_nodes = 8
//! tol = 1e-10
//! max_levels = 8
//!
//! [rk4]
//! dt = 1e-3
//! check_stride = 4
//!
//! [picard]
//! c_hat = 0.1667
//! k_max = 5
//!
//! [sweep]
//! s = -1.0
//! thetas = [-1.0, 0.0, 2.0]
//! n_list = [16, 32, 64, 128, 256, 512, 1024, 2048, 4096]
//! base = { kind = "smooth", seed = 1 }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::DEFAULT_C_HAT;
use crate::error::{Error, Result};
use crate::grid::{GridKind, DEFAULT_LINE_PER_UNIT};
use crate::inflation::{BaseData, InflationConfig, Solver};
use crate::quadrature::QuadratureSpec;
use crate::spaces::Family;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Rk4Section {
    pub dt: f64,
    /// RK4 cross-check on every n-th sweep row (0 disables).
    pub check_stride: usize,
}

impl Default for Rk4Section {
    fn default() -> Self {
        Self { dt: 1e-3, check_stride: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PicardSection {
    pub c_hat: f64,
    pub k_max: usize,
}

impl Default for PicardSection {
    fn default() -> Self {
        Self { c_hat: DEFAULT_C_HAT, k_max: 5 }
    }
}

/// Sweep fields; numerics come from the other sections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub s: f64,
    pub thetas: Vec<f64>,
    pub family: Family,
    pub p: f64,
    pub q: f64,
    pub homogeneous: bool,
    pub grid: GridKind,
    pub per_unit: u32,
    pub base: BaseData,
    pub n_list: Vec<u64>,
    pub r: Option<f64>,
    pub eps: Option<f64>,
    pub amplitude: Option<f64>,
    pub m: f64,
    pub delta: f64,
    pub t_max: f64,
    pub c_dist: Option<f64>,
    pub solver: Solver,
    pub slope_tol: f64,
}

impl Default for SweepSection {
    fn default() -> Self {
        let d = InflationConfig::default();
        Self {
            s: d.s,
            thetas: d.thetas,
            family: d.family,
            p: d.p,
            q: d.q,
            homogeneous: d.homogeneous,
            grid: d.grid,
            per_unit: DEFAULT_LINE_PER_UNIT,
            base: d.base,
            n_list: d.n_list,
            r: d.r,
            eps: d.eps,
            amplitude: d.amplitude,
            m: d.m,
            delta: d.delta,
            t_max: d.t_max,
            c_dist: d.c_dist,
            solver: d.solver,
            slope_tol: d.slope_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub quad: QuadratureSpec,
    pub rk4: Rk4Section,
    pub picard: PicardSection,
    pub sweep: SweepSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            quad: QuadratureSpec::default(),
            rk4: Rk4Section::default(),
            picard: PicardSection::default(),
            sweep: SweepSection::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// The sweep configuration with the numeric sections applied.
    pub fn inflation(&self) -> InflationConfig {
        let s = &self.sweep;
        InflationConfig {
            s: s.s,
            thetas: s.thetas.clone(),
            family: s.family,
            p: s.p,
            q: s.q,
            homogeneous: s.homogeneous,
            grid: s.grid,
            per_unit: s.per_unit,
            base: s.base.clone(),
            n_list: s.n_list.clone(),
            r: s.r,
            eps: s.eps,
            amplitude: s.amplitude,
            m: s.m,
            delta: s.delta,
            t_max: s.t_max,
            c_dist: s.c_dist,
            solver: s.solver,
            k_max: self.picard.k_max,
            c_hat: self.picard.c_hat,
            quad: self.quad,
            rk4_dt: self.rk4.dt,
            rk4_check_stride: self.rk4.check_stride,
            slope_tol: s.slope_tol,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.quad.validate()?;
        if !(self.rk4.dt > 0.0 && self.rk4.dt <= 0.1) {
            return Err(Error::Config(format!("rk4.dt = {} must lie in (0, 0.1]", self.rk4.dt)));
        }
        self.inflation().validate()
    }
}

/// Provenance of one output: rerunning with `config` and `arguments`
/// reproduces it exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Command-line arguments after the subcommand, resolved.
    pub arguments: serde_json::Value,
    pub config: Option<RunConfig>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub wall_clock_s: f64,
    pub threads: usize,
}

impl RunManifest {
    pub fn new(subcommand: &str, arguments: serde_json::Value) -> Self {
        Self {
            subcommand: subcommand.into(),
            arguments,
            config: None,
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            wall_clock_s: 0.0,
            threads: rayon::current_num_threads(),
        }
    }

    /// `<output>.manifest.json`.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        name.push(".manifest.json");
        output.with_file_name(name)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = RunConfig::default();
        let back = RunConfig::from_toml_str(&c.to_toml_string().unwrap()).unwrap();
        assert_eq!(c, back);
        assert_eq!(c.inflation(), InflationConfig::default());
    }

    #[test]
    fn partial_file_and_unknown_keys() {
        let c = RunConfig::from_toml_str(
            "[quad]\ntol = 1e-11\n[rk4]\ndt = 5e-4\n[picard]\nc_hat = 0.2\n[sweep]\nn_list = [16, 32]\nbase = { kind = \"smooth\", seed = 3 }\n",
        )
        .unwrap();
        assert_eq!(c.quad.tol, 1e-11);
        assert_eq!(c.quad.base_nodes, 8);
        let inf = c.inflation();
        assert_eq!(inf.rk4_dt, 5e-4);
        assert_eq!(inf.c_hat, 0.2);
        assert_eq!(inf.base, BaseData::Smooth { seed: 3 });
        assert!(RunConfig::from_toml_str("[quad]\nnodes = 3\n").is_err());
        assert!(RunConfig::from_toml_str("[sweep]\nn_list = []\n").unwrap().validate().is_err());
    }

    #[test]
    fn manifest_path() {
        assert_eq!(
            RunManifest::path_for(Path::new("out/report.csv")),
            PathBuf::from("out/report.csv.manifest.json")
        );
    }
}
