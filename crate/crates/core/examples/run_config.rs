//! Keyed-text run configuration: parse a TOML file (or the built-in
//! defaults), validate it, run the sweep it describes and write the CSV
//! with its manifest.

use std::path::PathBuf;

use bbmlab::config::{RunConfig, RunManifest};
use bbmlab::inflation::run_sweep;

fn main() -> bbmlab::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(p) => RunConfig::load(p.as_ref())?,
        None => RunConfig::from_toml_str("seed = 3\n[sweep]\nn_list = [16, 64, 256, 1024]\nbase = { kind = \"smooth\", seed = 3 }\n")?,
    };
    cfg.validate()?;
    println!("{}", cfg.to_toml_string()?);
    let report = run_sweep(&cfg.inflation())?;
    print!("{}", report.summary());

    let out = std::env::temp_dir().join("bbmlab_run_config.csv");
    report.write_csv(std::fs::File::create(&out)?)?;
    let mut manifest = RunManifest::new("sweep", serde_json::json!({ "output": out }));
    manifest.config = Some(cfg.clone());
    manifest.seed = Some(cfg.seed);
    manifest.outputs = vec![out.clone()];
    let mpath: PathBuf = RunManifest::path_for(&out);
    manifest.write(&mpath)?;
    println!("wrote {} and {}", out.display(), mpath.display());
    Ok(())
}
