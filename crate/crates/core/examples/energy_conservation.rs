//! RK4 on the Galerkin-truncated equation conserves
//! E = Σ (1+ξ²)|û|² to round-off, while the ℱL¹ and H¹ norms move.

use bbmlab::dynamics::{energy, integrate_rk4_with};
use bbmlab::sampling::smooth_profile;
use bbmlab::spaces::sobolev_norm;
use bbmlab::FrequencyGrid;
use num_complex::Complex64;

fn main() -> bbmlab::Result<()> {
    let grid = FrequencyGrid::torus(40)?;
    let u0 = smooth_profile(grid, 3)?.scale(Complex64::new(2.0, 0.0));
    let tr = integrate_rk4_with(&u0, 5.0, 1e-3, 500)?;
    let e0 = energy(&u0);
    println!("{:>6} {:>20} {:>12} {:>12} {:>10}", "t", "E", "FL1", "H1", "drift");
    for (t, u) in tr.times.iter().zip(&tr.states) {
        let e = energy(u);
        println!(
            "{t:>6.2} {e:>20.15} {:>12.6} {:>12.6} {:>10.2e}",
            u.l1_norm(),
            sobolev_norm(u, 1.0),
            (e - e0).abs() / e0
        );
    }
    Ok(())
}
