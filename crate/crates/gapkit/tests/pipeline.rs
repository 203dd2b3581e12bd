//! Cross-module pipeline properties that no single unit owns.

use gapkit::corrections::{correct_spectrum, egelstaff_correct, CorrectionKind};
use gapkit::correlators::CorrelationSeries;
use gapkit::diagnostics::temperature_invariance;
use gapkit::oracle::{analytic_alpha_boltzmann, BathMode, BathModeSet};
use gapkit::spectral::{
    apply_gaussian_window, classical_tdcd, positive_grid, spectral_density_from_asym,
    symmetric_grid, WindowSpec,
};
use gapkit::units::PhysicalContext;

fn bath() -> BathModeSet {
    BathModeSet::new(vec![
        BathMode {
            omega: 80.0,
            huang_rhys: 0.4,
        },
        BathMode {
            omega: 200.0,
            huang_rhys: 0.5,
        },
        BathMode {
            omega: 420.0,
            huang_rhys: 0.15,
        },
    ])
    .unwrap()
}

/// J for one (temperature, method) through the analytic Boltzmann route, so
/// the ranking below is deterministic rather than a Monte Carlo statement.
fn j_for(temperature: f64, kind: CorrectionKind) -> gapkit::spectral::Spectrum {
    let ctx = PhysicalContext::new(temperature).unwrap();
    let dt = 4.0;
    let times: Vec<f64> = (0..=400).map(|k| k as f64 * dt).collect();
    let alpha = analytic_alpha_boltzmann(&bath(), &ctx, &times);
    let series = CorrelationSeries::from_values(dt, alpha).unwrap();
    let windowed = apply_gaussian_window(&series, &WindowSpec::new(0.09, 1600.0).unwrap());
    // Keep the grid below ~700 cm^-1: the signal lives there, and the
    // exponential-prefactor methods amplify nothing but rounding noise in an
    // empty tail.
    let grid = symmetric_grid(700.0, 1.0);
    if kind == CorrectionKind::Egelstaff {
        egelstaff_correct(&windowed, &ctx, &grid).unwrap().j
    } else {
        let g_cl = classical_tdcd(&windowed, &grid).unwrap();
        correct_spectrum(&g_cl, kind, &ctx).unwrap().j
    }
}

#[test]
fn only_the_harmonic_correction_is_temperature_invariant_on_boltzmann_data() {
    let score = |kind| {
        let j77 = j_for(77.0, kind);
        let j300 = j_for(300.0, kind);
        temperature_invariance(&j77, &j300).unwrap().relative_l2
    };
    let harmonic = score(CorrectionKind::Harmonic);
    assert!(
        harmonic < 1e-9,
        "harmonic mismatch is pure rounding: {harmonic}"
    );
    for kind in [
        CorrectionKind::Standard,
        CorrectionKind::Schofield,
        CorrectionKind::SchofieldHarmonic,
        CorrectionKind::Egelstaff,
    ] {
        let other = score(kind);
        assert!(
            other > harmonic,
            "{kind} scored {other}, not above harmonic {harmonic}"
        );
        assert!(
            other > 0.05,
            "{kind} should visibly break invariance: {other}"
        );
    }
}

#[test]
fn oracle_j_survives_the_spectral_density_round_trip() {
    // J -> j -> J on the discrete-bath spectrum reproduces the input where
    // the grid is symmetric: J(nu) = pi (j(nu) - j(-nu)).
    let j = gapkit::oracle::analytic_j(&bath(), 5.0, &symmetric_grid(700.0, 1.0)).unwrap();
    let sd = spectral_density_from_asym(&j).unwrap();
    let back = gapkit::spectral::asym_from_spectral_density(&sd).unwrap();
    assert_eq!(back.frequencies, j.frequencies);
    let scale = j.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    for (a, b) in back.values.iter().zip(&j.values) {
        assert!((a - b).abs() <= 1e-12 * scale);
    }
}

#[test]
fn spectral_density_positive_restriction_matches_line_weights() {
    // j(omega) from the corrected J: integral of the positive lobes in the
    // angular measure equals kappa^2 after the 1/pi scaling.
    let j = j_for(300.0, CorrectionKind::Harmonic);
    let sd = spectral_density_from_asym(&j).unwrap();
    assert!(sd.frequencies.iter().all(|&nu| nu >= 0.0));
    for m in bath().modes() {
        let area = gapkit::spectral::lobe_area_angular(&sd, m.omega - 45.0, m.omega + 45.0);
        let target = m.kappa() * m.kappa();
        assert!(
            (area / target - 1.0).abs() < 0.01,
            "mode {}: {area} vs {target}",
            m.omega
        );
    }
    // And the legacy tanh route lands below it at 77 K, by the known factor.
    let ctx77 = PhysicalContext::new(77.0).unwrap();
    let times: Vec<f64> = (0..=400).map(|k| k as f64 * 4.0).collect();
    let alpha = analytic_alpha_boltzmann(&bath(), &ctx77, &times);
    let series = CorrelationSeries::from_values(4.0, alpha).unwrap();
    let windowed = apply_gaussian_window(&series, &WindowSpec::new(0.09, 1600.0).unwrap());
    let legacy =
        gapkit::oracle::j_from_real_alpha(&windowed, &ctx77, &positive_grid(700.0, 1.0)).unwrap();
    for m in bath().modes() {
        let zeta = ctx77.beta_hbar_omega(m.omega);
        let shortfall = (zeta / 2.0).tanh() / (zeta / 2.0);
        let area = gapkit::spectral::lobe_area_angular(&legacy, m.omega - 45.0, m.omega + 45.0);
        let target = m.kappa() * m.kappa() * shortfall;
        assert!(
            (area / target - 1.0).abs() < 0.015,
            "mode {}: {area} vs {target}",
            m.omega
        );
    }
}
