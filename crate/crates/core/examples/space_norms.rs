//! The function-space zoo on one example: Fourier-Lebesgue, Fourier amalgam,
//! modulation and Wiener amalgam norms, sharp vs smooth partitions, and the
//! band-restricted terms used as inflation witnesses.

use bbmlab::sampling::smooth_profile;
use bbmlab::spaces::{band_restricted_norm, space_norm_with};
use bbmlab::{FrequencyGrid, Partition, SpaceSpec};

fn main() -> bbmlab::Result<()> {
    let grid = FrequencyGrid::line(16, 8)?;
    let f = smooth_profile(grid, 7)?;
    let specs = [
        SpaceSpec::wiener_algebra(),
        SpaceSpec::fourier_lebesgue(2.0, -1.0),
        SpaceSpec::fourier_amalgam(2.0, 1.0, 0.0),
        SpaceSpec::fourier_amalgam(1.0, f64::INFINITY, 0.5),
        SpaceSpec::modulation(2.0, 0.0),
        SpaceSpec::wiener_amalgam(1.0, 0.0),
        SpaceSpec::wiener_amalgam(2.0, 0.0),
    ];
    println!("{:<18} {:>14} {:>14}", "space", "sharp", "triangle");
    for spec in &specs {
        let sharp = space_norm_with(&f, spec, Partition::Sharp)?;
        let smooth = space_norm_with(&f, spec, Partition::Triangle)?;
        println!("{:<18} {sharp:>14.10} {smooth:>14.10}", spec.to_string());
    }
    let spec = SpaceSpec::fourier_amalgam(2.0, 2.0, -1.0);
    for n in 0..=4 {
        println!("band {n} term of {spec}: {:.6e}", band_restricted_norm(&f, &spec, n)?);
    }
    Ok(())
}
