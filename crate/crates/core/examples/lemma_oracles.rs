//! The estimate oracles, suite by suite, with their measured constants.
//! Pass a suite name (identities, inequalities, lower-bounds, solvers,
//! degeneracy, all) and optionally a seed.

use bbmlab::oracles::{suite_passes, verify, Suite};

fn main() -> bbmlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args.next().as_deref().unwrap_or("inequalities").parse()?;
    let seed = args.next().map(|s| s.parse().expect("seed must be an integer")).unwrap_or(1);
    let reports = verify(suite, seed)?;
    for r in &reports {
        println!("{}", r.line());
        println!("    sample: {}  ({:.2} s)", r.sample, r.elapsed_s);
        if let Some(w) = &r.witness {
            println!("    witness: {w}");
        }
    }
    println!("suite {:?} seed {seed}: {}", suite, if suite_passes(&reports) { "pass" } else { "fail" });
    Ok(())
}
