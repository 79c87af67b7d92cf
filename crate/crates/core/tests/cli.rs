//! End-to-end behaviour of the command-line front end.

use std::path::Path;
use std::process::Command;

use bbmlab::cli::{run_from, EXIT_ASSERTION, EXIT_OK, EXIT_USAGE};
use bbmlab::dynamics::picard_iterate;
use bbmlab::inflation::make_phi0n;
use bbmlab::spaces::space_norm;
use bbmlab::{FrequencyGrid, QuadratureSpec, SpaceSpec};

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_from(std::iter::once("bbmlab").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn write(path: &Path, text: &str) -> String {
    std::fs::write(path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn table_value(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key},")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
        .parse()
        .unwrap()
}

#[test]
fn norm_examples() {
    let dir = tempfile::tempdir().unwrap();
    let mean = write(&dir.path().join("mean.csv"), "xi,re,im\n0,1,0\n");
    assert_eq!(run(&["norm", &mean, "--spec", "fa:2:2:-1"]), (EXIT_OK, "1.00000000000000\n".into()));
    let delta = write(&dir.path().join("d5.csv"), "xi,re,im\n5,1,0\n");
    let (code, out) = run(&["norm", &delta, "--spec", "fa:2:2:-1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "0.196116135138184");
    assert!((out.trim().parse::<f64>().unwrap() - 26f64.powf(-0.5)).abs() < 1e-15);

    let phi = dir.path().join("phi.csv");
    let (code, _) = run(&["picard", "--N", "10", "--R", "1", "--k", "1", "--T", "0", "--output", phi.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, out) = run(&["norm", phi.to_str().unwrap(), "--spec", "fl:1:1:0"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "6.00000000000000"));
}

#[test]
fn norm_errors_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir.path().join("bad.csv"), "xi,re,im\n0,1,0\n1,oops,0\n");
    assert_eq!(run(&["norm", &bad, "--spec", "fl:1:1:0"]).0, EXIT_USAGE);
    let good = write(&dir.path().join("good.csv"), "xi,re,im\n0,1,0\n");
    assert_eq!(run(&["norm", &good, "--spec", "fa:2"]).0, EXIT_USAGE);
    assert_eq!(run(&["norm", "/nonexistent/x.csv", "--spec", "fl:1:1:0"]).0, EXIT_USAGE);
    assert_eq!(run(&["norm"]).0, EXIT_USAGE);
}

#[test]
fn picard_echo_and_library_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let echo = dir.path().join("echo.csv");
    let (code, _) = run(&["picard", "--N", "6", "--R", "2.5", "--k", "1", "--T", "0", "--output", echo.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&echo).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows, ["-7,2.5,0", "-6,2.5,0", "-5,2.5,0", "5,2.5,0", "6,2.5,0", "7,2.5,0"]);
    assert!(Path::new(&format!("{}.manifest.json", echo.display())).exists());

    let (code, out) = run(&["picard", "--N", "32", "--R", "3", "--k", "2", "--T", "0.1", "--spec", "fa:2:2:-1"]);
    assert_eq!(code, EXIT_OK);
    let grid = FrequencyGrid::torus(2 * 33 + 1).unwrap();
    let u0 = make_phi0n(32, 3.0, grid).unwrap();
    let lib = picard_iterate(&u0, 2, 0.1, &QuadratureSpec::default()).unwrap();
    let want = space_norm(&lib.value, &SpaceSpec::fourier_amalgam(2.0, 2.0, -1.0)).unwrap();
    let got = table_value(&out, "fa:2:2:-1");
    assert!((got - want).abs() <= 1e-14 * want, "{got} vs {want}");
    assert!(table_value(&out, "quad_error") <= 1e-10);

    assert_eq!(run(&["picard", "--N", "32", "--R", "3", "--k", "0", "--T", "0.1"]).0, EXIT_USAGE);
    assert_eq!(run(&["picard", "--N", "32", "--R", "3", "--k", "2", "--T", "-1"]).0, EXIT_USAGE);
}

#[test]
fn sweep_summary_exit_code_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir.path().join("run.toml"), "seed = 1\n[sweep]\nn_list = [16, 64, 256, 1024]\n");
    let csv = dir.path().join("report.csv");
    let (code, out) = run(&["sweep", "--config", &cfg, "--output", csv.to_str().unwrap()]);
    assert!(out.contains("inflation slope 2r-eps = 0.166667"), "{out}");
    assert!(out.contains("band-1 witness theta=2"), "{out}");
    // full-norm slopes at theta = 0, 2 are part of the strict assertion set
    assert_eq!(code, EXIT_ASSERTION, "{out}");

    let manifest = format!("{}.manifest.json", csv.display());
    let replay = dir.path().join("replay.csv");
    let (code2, _) = run(&["sweep", "--replay", &manifest, "--output", replay.to_str().unwrap()]);
    assert_eq!(code2, code);
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&replay).unwrap());
    let header = std::fs::read_to_string(&csv).unwrap();
    assert!(header.starts_with("N,R,T,dist_s,norm_theta_-1,norm_theta_0,norm_theta_2,band1,tail,residual,flags\n"));
}

#[test]
fn sweep_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(&dir.path().join("empty.toml"), "[sweep]\nn_list = []\n");
    assert_eq!(run(&["sweep", "--config", &empty]).0, EXIT_USAGE);
    let unknown = write(&dir.path().join("unknown.toml"), "[sweep]\nwidth = 3\n");
    assert_eq!(run(&["sweep", "--config", &unknown]).0, EXIT_USAGE);
    let positive = write(&dir.path().join("pos.toml"), "[sweep]\ns = 0.5\n");
    assert_eq!(run(&["sweep", "--config", &positive]).0, EXIT_USAGE);
    let infeasible = write(&dir.path().join("inf.toml"), "[sweep]\nr = 0.1\neps = 0.5\n");
    assert_eq!(run(&["sweep", "--config", &infeasible]).0, EXIT_USAGE);
}

#[test]
fn verify_identities_pass_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let (code, out) = run(&["verify", "--suite", "identities", "--seed", "9", "--output", a.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS ") && l.contains("identity_")).count(), 4);
    assert!(out.ends_with("PASS (4 oracles, seed 9)\n"));
    run(&["verify", "--suite", "identities", "--seed", "9", "--output", b.to_str().unwrap()]);
    let load = |p: &Path| -> Vec<serde_json::Value> {
        let v: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.into_iter().map(|r| r["constants"].clone()).collect()
    };
    assert_eq!(load(&a), load(&b));

    let csv = dir.path().join("r.csv");
    run(&["verify", "--suite", "degeneracy", "--output", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("id,pass,informational,seed,constants\n"));
    assert_eq!(run(&["verify", "--suite", "everything"]).0, EXIT_USAGE);
}

#[test]
fn simulate_series() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(&dir.path().join("zero.csv"), "xi,re,im\n0,0,0\n");
    let (code, out) = run(&["simulate", "--T", "0.1", "--dt", "0.01", "--input", &zero]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,E,fl1,hs"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r[1..] == [0.0, 0.0, 0.0]));

    // the mean is invisible to φ and does not move
    let mean = write(&dir.path().join("mean.csv"), "xi,re,im\n0,0.7,0\n");
    let (_, out) = run(&["simulate", "--T", "1", "--dt", "0.01", "--input", &mean, "--stride", "10"]);
    let rows: Vec<Vec<f64>> = out.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert!(rows.iter().all(|r| r[1..] == rows[0][1..]));

    let data = write(&dir.path().join("d.csv"), "xi,re,im\n-2,0.25,0\n-1,0.5,0\n0,0.5,0\n1,0.5,0\n2,0.25,0\n");
    let series = dir.path().join("series.csv");
    let (code, _) = run(&["simulate", "--T", "1", "--dt", "1e-3", "--input", &data, "--output", series.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&series).unwrap();
    let e: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(e.len(), 1001);
    assert!(e.iter().all(|v| (v - e[0]).abs() <= 1e-8 * e[0]));
    assert_eq!(run(&["simulate", "--T", "1", "--dt", "0", "--input", &data]).0, EXIT_USAGE);
}

#[test]
fn binary_exit_codes_and_threads() {
    let bin = env!("CARGO_BIN_EXE_bbmlab");
    let status = |args: &[&str], threads: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args);
        if let Some(t) = threads {
            c.env("BBMLAB_THREADS", t);
        }
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(status(&["verify", "--suite", "identities"], Some("2")), 0);
    assert_eq!(status(&["verify", "--suite", "identities"], Some("many")), 2);
    assert_eq!(status(&["nope"], None), 2);
    assert_eq!(status(&["--help"], None), 0);
}
