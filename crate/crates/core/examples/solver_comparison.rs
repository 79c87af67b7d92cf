//! Three solvers on small random data: truncated Picard series with its tail
//! certificate, RK4, and fixed-point iteration of the Duhamel map.

use bbmlab::dynamics::DEFAULT_C_HAT;
use bbmlab::oracles::cross_validate_case;

fn main() -> bbmlab::Result<()> {
    println!("{:>4} {:>6} {:>6} {:>12} {:>12} {:>12} {:>12}  ok", "seed", "T", "FL1", "series-rk4", "series-fp", "rk4-fp", "tail");
    for seed in 0..6 {
        let t = [0.5, 1.0, 2.0][seed as usize % 3];
        let c = cross_validate_case(seed, t, 0.5, DEFAULT_C_HAT)?;
        println!(
            "{seed:>4} {t:>6} {:>6} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}  {}",
            c.fl1, c.series_vs_rk4, c.series_vs_fixed_point, c.rk4_vs_fixed_point, c.tail, c.pass
        );
    }
    Ok(())
}
