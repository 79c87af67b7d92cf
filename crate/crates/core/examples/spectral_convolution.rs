//! Frequency grids and spectral functions: the torus and line lattices, the
//! inflation data φ_{0,N}, and exact convolution (direct and FFT agree).

use bbmlab::inflation::make_phi0n;
use bbmlab::{FrequencyGrid, Overflow};

fn main() -> bbmlab::Result<()> {
    let torus = FrequencyGrid::torus(48)?;
    let line = FrequencyGrid::line(48, 8)?;
    for grid in [torus, line] {
        let f = make_phi0n(10, 2.0, grid)?;
        let direct = f.convolve_with(&f, Overflow::Error)?;
        let fft = f.convolve_fft(&f, Overflow::Error)?;
        let gap = direct.sub(&fft)?.l1_norm();
        let (lo, hi) = direct.support().unwrap_or((0, 0));
        println!(
            "{:?} h={}: phi_0N has {} modes, |phi|_FL1 = {:.3}; phi*phi on [{}, {}], {} modes, |direct - fft|_FL1 = {gap:.2e}",
            grid.kind(),
            grid.spacing(),
            f.nnz(),
            f.l1_norm(),
            grid.frequency(lo),
            grid.frequency(hi),
            direct.nnz(),
        );
        // low-frequency piece created by the I_N x (-I_N) interaction
        let at = |xi: f64| direct.coeff_at(xi).re;
        println!("    (phi*phi)(0) = {:.3}, (phi*phi)(1) = {:.3}, (phi*phi)(2N) = {:.3}", at(0.0), at(1.0), at(20.0));
    }
    Ok(())
}
