//! Acceptance suite: one PASS/FAIL line per criterion, details indented.
//!
//! A criterion that fails is reported as FAIL and the process still exits 0
//! so that the rest of the test run proceeds; set
//! `BBMLAB_ACCEPTANCE_STRICT=1` to exit 1 on any FAIL. Library errors
//! (as opposed to failed criteria) always exit 1.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bbmlab::inflation::{run_sweep, BaseData, InflationConfig, InflationReport};
use bbmlab::oracles::{
    degeneracy_suite, identity_suite, inequality_suite, lower_bound_suite, solver_suite, suite_passes, OracleReport,
};

const SEED: u64 = 1;

type Criterion = Box<dyn FnOnce() -> bbmlab::Result<Outcome>>;

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

fn oracle_outcome(reports: &[OracleReport], elapsed: Duration, budget: Duration) -> Outcome {
    let mut details: Vec<String> = reports.iter().map(|r| r.line()).collect();
    let in_time = elapsed <= budget;
    details.push(format!("runtime {:.1} s (budget {} s)", elapsed.as_secs_f64(), budget.as_secs()));
    Outcome { pass: suite_passes(reports) && in_time, details }
}

/// Rows at or beyond `N*` have nondecreasing norms at every θ.
fn monotone_beyond_n_star(rep: &InflationReport) -> bool {
    let Some(n_star) = rep.n_star else { return false };
    let tail: Vec<_> = rep.rows.iter().filter(|r| r.n >= n_star).collect();
    tail.windows(2).all(|w| w[0].norms_theta.iter().zip(&w[1].norms_theta).all(|(a, b)| b >= a))
}

fn sweep_details(label: &str, rep: &InflationReport, out: &mut Vec<String>) {
    out.push(format!(
        "{label}: distance slope {:.4} ({}), N* = {}, dominance at N = {}: {:.3}",
        rep.distance_slope.fitted,
        if rep.distance_slope.pass { "ok" } else { "off" },
        rep.n_star.map(|n| n.to_string()).unwrap_or_else(|| "none".into()),
        rep.largest_feasible_n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
        rep.dominance_at_largest_feasible,
    ));
    for (full, b1) in rep.norm_slopes.iter().zip(&rep.band1_slopes) {
        out.push(format!(
            "{label}: {:<14} full norm {:>8.4} ({})   band-1 {:>8.4} ({})   expected {:.4}",
            full.name.trim_start_matches("norm "),
            full.fitted,
            if full.pass { "ok" } else { "off" },
            b1.fitted,
            if b1.pass { "ok" } else { "off" },
            full.expected
        ));
    }
}

/// Slopes of `other` within `tol` (relative) of those of `base`.
fn slopes_agree(base: &InflationReport, other: &InflationReport, tol: f64) -> bool {
    let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs();
    close(base.distance_slope.fitted, other.distance_slope.fitted)
        && base.norm_slopes.iter().zip(&other.norm_slopes).all(|(a, b)| close(a.fitted, b.fitted))
        && base.band1_slopes.iter().zip(&other.band1_slopes).all(|(a, b)| close(a.fitted, b.fitted))
}

fn criterion4() -> bbmlab::Result<Outcome> {
    let start = Instant::now();
    let base = InflationConfig::default();
    let runs = [
        ("zero u0", base.clone()),
        ("smooth u0", InflationConfig { base: BaseData::Smooth { seed: SEED }, ..base.clone() }),
        ("homogeneous", InflationConfig { homogeneous: true, ..base.clone() }),
    ];
    let mut details = Vec::new();
    let mut reports = Vec::new();
    let mut pass = true;
    for (label, cfg) in &runs {
        let rep = run_sweep(cfg)?;
        sweep_details(label, &rep, &mut details);
        let mono = monotone_beyond_n_star(&rep);
        details.push(format!(
            "{label}: all slope assertions {}, monotone growth beyond N* {}",
            if rep.slopes_pass() { "hold" } else { "do not hold" },
            if mono { "holds" } else { "does not hold" }
        ));
        pass &= rep.slopes_pass() && mono;
        reports.push(rep);
    }
    for (i, label) in [(1, "smooth u0"), (2, "homogeneous")] {
        let agree = slopes_agree(&reports[0], &reports[i], base.slope_tol);
        details.push(format!("{label} slopes agree with zero u0 within 25%: {agree}"));
        pass &= agree;
    }
    let elapsed = start.elapsed();
    details.push(format!("runtime {:.1} s (budget 1800 s)", elapsed.as_secs_f64()));
    pass &= elapsed <= Duration::from_secs(1800);
    Ok(Outcome { pass, details })
}

fn timed_suite(
    f: impl FnOnce() -> bbmlab::Result<Vec<OracleReport>>,
    budget_s: u64,
) -> bbmlab::Result<Outcome> {
    let start = Instant::now();
    let reports = f()?;
    Ok(oracle_outcome(&reports, start.elapsed(), Duration::from_secs(budget_s)))
}

fn main() -> ExitCode {
    // `cargo test -- <filter>` passes arguments; this target ignores them
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 identity suite", Box::new(|| timed_suite(|| identity_suite(1000, SEED), 60))),
        ("2 inequality suite", Box::new(|| timed_suite(|| inequality_suite(SEED), 300))),
        ("3 lower-bound suite", Box::new(|| timed_suite(|| lower_bound_suite(SEED), 300))),
        ("4 inflation sweep", Box::new(criterion4)),
        ("5 solver cross-validation", Box::new(|| timed_suite(|| solver_suite(SEED), 300))),
        ("6 degeneracy checks", Box::new(|| timed_suite(degeneracy_suite, 300))),
    ];
    let mut failures = 0;
    let mut errors = 0;
    for (name, run) in criteria {
        match run() {
            Ok(o) => {
                println!("{} criterion {name}", if o.pass { "PASS" } else { "FAIL" });
                for d in &o.details {
                    println!("      {d}");
                }
                failures += usize::from(!o.pass);
            }
            Err(e) => {
                println!("FAIL criterion {name}");
                println!("      error: {e}");
                errors += 1;
            }
        }
    }
    println!("acceptance: {} of 6 criteria pass", 6 - failures - errors);
    let strict = std::env::var("BBMLAB_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if errors > 0 || (strict && failures > 0) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
