//! Property tests for the structural invariants.

use bbmlab::dynamics::{energy, integrate_rk4, linear_propagate, phi, picard_iterate, product};
use bbmlab::sampling::{random_band_limited, rng};
use bbmlab::spaces::space_norm_with;
use bbmlab::spectrum_io::{read_spectrum, write_spectrum};
use bbmlab::{Family, FrequencyGrid, Overflow, Partition, QuadratureSpec, SpaceSpec, SpectralFunction};
use num_complex::Complex64;
use proptest::prelude::*;

fn torus_fn(seed: u64, band: u64, hermitian: bool) -> SpectralFunction {
    let g = FrequencyGrid::torus(4 * band + 4).unwrap();
    random_band_limited(g, band as f64, 1.0, hermitian, &mut rng(seed)).unwrap()
}

fn line_fn(seed: u64, band: u64) -> SpectralFunction {
    let g = FrequencyGrid::line(2 * band + 2, 4).unwrap();
    random_band_limited(g, band as f64, 1.0, true, &mut rng(seed)).unwrap()
}

fn any_spec() -> impl Strategy<Value = SpaceSpec> {
    let family = prop_oneof![
        Just(Family::FourierLebesgue),
        Just(Family::FourierAmalgam),
        Just(Family::Modulation),
        Just(Family::WienerAmalgam),
    ];
    let exp = prop_oneof![Just(1.0), Just(2.0), Just(f64::INFINITY), 1.0..4.0f64];
    (family, exp.clone(), exp, -2.0..2.0f64, any::<bool>()).prop_map(|(family, p, q, s, hom)| {
        // wiener amalgam and modulation norms are computed for p = 2
        let p = if matches!(family, Family::Modulation | Family::WienerAmalgam) { 2.0 } else { p };
        let p = if family == Family::FourierLebesgue { q } else { p };
        SpaceSpec::new(family, p, q, s, hom).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_direct_matches_fft(a in 0u64..1000, b in 0u64..1000, band in 1u64..12) {
        let f = torus_fn(a, band, false);
        let g = torus_fn(b, band, false);
        let d = f.convolve_with(&g, Overflow::Error).unwrap();
        let h = f.convolve_fft(&g, Overflow::Error).unwrap();
        prop_assert!(d.sub(&h).unwrap().l1_norm() <= 1e-10 * (1.0 + d.l1_norm()));
    }

    #[test]
    fn convolution_is_commutative_and_young(a in 0u64..1000, b in 0u64..1000, band in 1u64..8) {
        let f = line_fn(a, band);
        let g = line_fn(b, band);
        let fg = f.convolve(&g).unwrap();
        let gf = g.convolve(&f).unwrap();
        prop_assert!(fg.sub(&gf).unwrap().l1_norm() <= 1e-12 * (1.0 + fg.l1_norm()));
        // Young: |f*g|_1 <= |f|_1 |g|_1
        prop_assert!(fg.l1_norm() <= f.l1_norm() * g.l1_norm() * (1.0 + 1e-12));
        let (lo, hi) = fg.support().unwrap();
        let m = 4 * band as i64;
        prop_assert!(lo >= -2 * m && hi <= 2 * m);
    }

    #[test]
    fn propagator_is_an_isometry(seed in 0u64..1000, t in -50.0..50.0f64, spec in any_spec()) {
        let f = torus_fn(seed, 6, true);
        let u = linear_propagate(&f, t);
        for part in [Partition::Sharp, Partition::Triangle] {
            let a = space_norm_with(&f, &spec, part).unwrap();
            let b = space_norm_with(&u, &spec, part).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{spec}: {a} vs {b}");
        }
    }

    #[test]
    fn propagator_group_law(seed in 0u64..1000, t in -20.0..20.0f64, s in -20.0..20.0f64) {
        let f = line_fn(seed, 5);
        let two = linear_propagate(&linear_propagate(&f, t), s);
        let one = linear_propagate(&f, t + s);
        prop_assert!(two.sub(&one).unwrap().l1_norm() <= 1e-12 * f.l1_norm().max(1.0));
    }

    #[test]
    fn partition_of_unity(xi in -200.0..200.0f64) {
        for part in [Partition::Sharp, Partition::Triangle] {
            let c = xi.round() as i64;
            let total: f64 = (c - 3..=c + 3).map(|n| part.sigma(n, xi)).sum();
            prop_assert!((total - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn phi_is_odd_and_bounded(xi in -1e6..1e6f64) {
        prop_assert_eq!(phi(-xi), -phi(xi));
        prop_assert!(phi(xi).abs() <= 0.5);
    }

    #[test]
    fn products_of_real_functions_stay_real(a in 0u64..1000, b in 0u64..1000) {
        let f = torus_fn(a, 5, true);
        let g = torus_fn(b, 5, true);
        let p = product(&f, &g, Overflow::Error).unwrap();
        prop_assert!(p.hermitian_defect() <= 1e-12 * (1.0 + p.l1_norm()));
    }

    #[test]
    fn norms_are_homogeneous_and_subadditive(a in 0u64..500, b in 0u64..500, lambda in -5.0..5.0f64, spec in any_spec()) {
        let f = torus_fn(a, 6, true);
        let g = torus_fn(b, 6, true);
        let nf = space_norm_with(&f, &spec, Partition::Triangle).unwrap();
        let ng = space_norm_with(&g, &spec, Partition::Triangle).unwrap();
        let scaled = space_norm_with(&f.scale(Complex64::new(lambda, 0.0)), &spec, Partition::Triangle).unwrap();
        prop_assert!((scaled - lambda.abs() * nf).abs() <= 1e-12 * nf.max(1.0));
        // the Wiener amalgam norm is sampled; allow its sampling error
        let slack = if spec.family == Family::WienerAmalgam { 1e-3 } else { 1e-12 };
        let sum = space_norm_with(&f.add(&g).unwrap(), &spec, Partition::Triangle).unwrap();
        prop_assert!(sum <= (nf + ng) * (1.0 + slack), "{spec}: {sum} > {nf} + {ng}");
    }

    #[test]
    fn first_iterate_is_the_free_flow(seed in 0u64..1000, t in 0.0..3.0f64) {
        let f = torus_fn(seed, 4, true);
        let r = picard_iterate(&f, 1, t, &QuadratureSpec::default()).unwrap();
        prop_assert!(r.value.sub(&linear_propagate(&f, t)).unwrap().l1_norm() <= 1e-14 * f.l1_norm());
    }

    #[test]
    fn spectrum_csv_round_trip(seed in 0u64..1000) {
        let f = line_fn(seed, 3);
        let mut buf = Vec::new();
        write_spectrum(&mut buf, &f).unwrap();
        let back = read_spectrum(buf.as_slice(), *f.grid()).unwrap();
        prop_assert_eq!(back.entries(), f.entries());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn rk4_conserves_energy(seed in 0u64..1000, amp in 0.05..0.5f64) {
        let f = torus_fn(seed, 3, true).scale(Complex64::new(amp, 0.0));
        let g = FrequencyGrid::torus(24).unwrap();
        let f = f.regrid(g).unwrap();
        let tr = integrate_rk4(&f, 1.0, 1e-3).unwrap();
        let (e0, e1) = (energy(&f), energy(tr.last()));
        prop_assert!((e1 - e0).abs() <= 1e-8 * e0);
    }
}
