//! Picard iterates U_k[φ_{0,N}](T) along the s = -1 schedule: per-iterate
//! norms, quadrature error estimates and the geometric tail certificate.

use bbmlab::dynamics::{picard_series, DEFAULT_C_HAT, PROVABLE_C_HAT};
use bbmlab::inflation::{make_phi0n, schedule};
use bbmlab::spaces::{band_restricted_norm, space_norm};
use bbmlab::{FrequencyGrid, QuadratureSpec, SpaceSpec};

fn main() -> bbmlab::Result<()> {
    let k_max = 5;
    let x = SpaceSpec::fourier_lebesgue(2.0, -1.0);
    for n in [64u64, 512, 4096] {
        let sch = schedule(-1.0, n, None, None)?;
        let t = sch.t.min(0.1);
        let grid = FrequencyGrid::torus(k_max as u64 * (n + 1) + 1)?;
        let u0 = make_phi0n(n, sch.r_amp, grid)?;
        let series = picard_series(&u0, k_max, t, &QuadratureSpec::default(), DEFAULT_C_HAT)?;
        println!("N = {n}, R = {:.3}, T = {t:.4}, rho = {:.3}", sch.r_amp, series.rho);
        for k in 1..=k_max {
            let u = series.expansion.iterate(k);
            println!(
                "  k={k}  |U_k|_FL1 = {:.4e}  |U_k|_X = {:.4e}  band-1 = {:.4e}  modes = {}",
                u.l1_norm(),
                space_norm(u, &x)?,
                band_restricted_norm(u, &x, 1)?,
                u.nnz()
            );
        }
        let provable = bbmlab::dynamics::tail_bound(u0.l1_norm(), t, k_max, PROVABLE_C_HAT);
        println!(
            "  tail (calibrated c) = {:.3e}, tail (provable c) = {provable:.3e}, quadrature = {:.1e}",
            series.tail_bound, series.quad_error
        );
    }
    Ok(())
}
