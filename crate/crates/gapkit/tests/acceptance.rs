//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The oracle bath provides the ground truth throughout: Monte Carlo
//! estimates are checked against closed forms, corrected spectra against
//! exact line areas, and the diagnostics against constructions whose answer
//! is provable.

use gapkit::corrections::{
    correct_spectrum, egelstaff_correct, g_prefactor, j_prefactor, reconstruct_correlator,
    CorrectionKind,
};
use gapkit::correlators::{three_time_correlator, two_time_correlator, CorrelationSeries};
use gapkit::diagnostics::{temperature_invariance, three_point_significance};
use gapkit::oracle::{
    analytic_alpha_boltzmann, analytic_alpha_wigner, analytic_j, analytic_quantum_alpha,
    concatenated_trace, mc_correlator, BathMode, BathModeSet, CouplingForm, InitialDistribution,
    McCorrelation, QuadraticCoupling,
};
use gapkit::spectral::{
    apply_gaussian_window, classical_tdcd, lobe_area_angular, symmetric_grid, window_kernel_fwhm,
    Spectrum, WindowSpec,
};
use gapkit::trajectory::GapTrajectory;
use gapkit::units::PhysicalContext;

const DT: f64 = 4.0;

fn ctx(t: f64) -> PhysicalContext {
    PhysicalContext::new(t).unwrap()
}

fn single_mode() -> BathModeSet {
    BathModeSet::new(vec![BathMode {
        omega: 100.0,
        huang_rhys: 0.5,
    }])
    .unwrap()
}

fn three_modes() -> BathModeSet {
    BathModeSet::new(vec![
        BathMode {
            omega: 100.0,
            huang_rhys: 0.5,
        },
        BathMode {
            omega: 200.0,
            huang_rhys: 0.3,
        },
        BathMode {
            omega: 350.0,
            huang_rhys: 0.2,
        },
    ])
    .unwrap()
}

fn lag_grid(count: usize) -> Vec<f64> {
    (0..count).map(|k| k as f64 * DT).collect()
}

fn pass(criterion: u32, detail: impl std::fmt::Display) {
    println!("criterion {criterion:02}: PASS — {detail}");
}

/// Max |mc - reference| in units of the per-lag standard error.
fn worst_sigma(mc: &McCorrelation, reference: &[f64]) -> f64 {
    mc.series
        .values
        .iter()
        .zip(&mc.std_err)
        .zip(reference)
        .map(|((v, e), r)| (v - r).abs() / e)
        .fold(0.0, f64::max)
}

#[test]
fn criterion_01_boltzmann_mc_matches_closed_form() {
    let started = std::time::Instant::now();
    let modes = single_mode();
    let c = ctx(300.0);
    let times = lag_grid(401);
    let mc = mc_correlator(
        &modes,
        &c,
        InitialDistribution::Boltzmann,
        &CouplingForm::Linear,
        100_000,
        &times,
        3,
    )
    .unwrap();
    let reference = analytic_alpha_boltzmann(&modes, &c, &times);
    let worst = worst_sigma(&mc, &reference);
    assert!(worst <= 3.0, "worst deviation {worst} standard errors");

    // alpha(0) target: 2 X Omega kT = 20 851 cm^-2.
    assert!((reference[0] - 20_851.0).abs() < 0.5);
    assert!((mc.series.values[0] - reference[0]).abs() <= 3.0 * mc.std_err[0]);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    pass(
        1,
        format!(
            "1e5-sample Boltzmann MC within 3 se at all 401 lags (worst {worst:.2} se, \
             alpha(0) = {:.1} cm^-2, {elapsed:.2?})",
            mc.series.values[0]
        ),
    );
}

#[test]
fn criterion_02_wigner_mc_matches_closed_form_and_quantum_real_part() {
    let modes = single_mode();
    let c = ctx(300.0);
    let times = lag_grid(401);
    let mc = mc_correlator(
        &modes,
        &c,
        InitialDistribution::Wigner,
        &CouplingForm::Linear,
        100_000,
        &times,
        8,
    )
    .unwrap();
    let wigner = analytic_alpha_wigner(&modes, &c, &times);
    let worst_wigner = worst_sigma(&mc, &wigner);
    assert!(worst_wigner <= 3.0, "worst vs alpha_wig: {worst_wigner} se");

    let quantum = analytic_quantum_alpha(&modes, &c, &times);
    let re_quantum: Vec<f64> = quantum.iter().map(|z| z.re).collect();
    let worst_quantum = worst_sigma(&mc, &re_quantum);
    assert!(
        worst_quantum <= 3.0,
        "worst vs Re alpha_q: {worst_quantum} se"
    );

    pass(
        2,
        format!(
            "Wigner MC within 3 se of alpha_wig (worst {worst_wigner:.2} se) and of \
             Re alpha_quantum (worst {worst_quantum:.2} se); alpha(0) = {:.1} cm^-2",
            mc.series.values[0]
        ),
    );
}

#[test]
fn criterion_03_exact_prefactor_line_areas() {
    let modes = three_modes();
    let times = lag_grid(401);
    let window = WindowSpec::new(0.09, 1600.0).unwrap();
    let grid = symmetric_grid(2000.0, 1.0);
    let mut worst: f64 = 0.0;
    for temperature in [77.0, 300.0] {
        let c = ctx(temperature);
        let routes = [
            (
                analytic_alpha_boltzmann(&modes, &c, &times),
                CorrectionKind::Harmonic,
            ),
            (
                analytic_alpha_wigner(&modes, &c, &times),
                CorrectionKind::Standard,
            ),
        ];
        for (alpha, kind) in routes {
            let series = CorrelationSeries::from_values(DT, alpha).unwrap();
            let g_cl = classical_tdcd(&apply_gaussian_window(&series, &window), &grid).unwrap();
            let pair = correct_spectrum(&g_cl, kind, &c).unwrap();
            for m in modes.modes() {
                let target = std::f64::consts::PI * m.kappa() * m.kappa();
                let area = lobe_area_angular(&pair.j, m.omega - 50.0, m.omega + 50.0);
                let rel = (area / target - 1.0).abs();
                assert!(
                    rel < 0.01,
                    "{kind} at {temperature} K, mode {}: rel {rel}",
                    m.omega
                );
                worst = worst.max(rel);
            }
        }
    }
    pass(
        3,
        format!("J lobe areas recover pi kappa^2 (worst relative error {worst:.2e} < 1e-2)"),
    );
}

#[test]
fn criterion_04_temperature_invariance_on_mc_pipeline() {
    let modes = BathModeSet::new(vec![BathMode {
        omega: 200.0,
        huang_rhys: 0.5,
    }])
    .unwrap();
    let times = lag_grid(401);
    let grid = symmetric_grid(2000.0, 1.0);
    let mut harmonic: Vec<Spectrum> = Vec::new();
    let mut standard: Vec<Spectrum> = Vec::new();
    // Independent seeds per temperature so the comparison carries genuine,
    // uncorrelated Monte Carlo noise.
    for (temperature, seed) in [(77.0, 1001u64), (300.0, 2002u64)] {
        let c = ctx(temperature);
        let mc = mc_correlator(
            &modes,
            &c,
            InitialDistribution::Boltzmann,
            &CouplingForm::Linear,
            100_000,
            &times,
            seed,
        )
        .unwrap();
        let windowed = apply_gaussian_window(&mc.series, &WindowSpec::new(0.09, 1600.0).unwrap());
        let g_cl = classical_tdcd(&windowed, &grid).unwrap();
        harmonic.push(
            correct_spectrum(&g_cl, CorrectionKind::Harmonic, &c)
                .unwrap()
                .j,
        );
        standard.push(
            correct_spectrum(&g_cl, CorrectionKind::Standard, &c)
                .unwrap()
                .j,
        );
    }

    let harm = temperature_invariance(&harmonic[0], &harmonic[1]).unwrap();
    assert!(
        harm.relative_l2 < 0.05,
        "harmonic relative l2 {}",
        harm.relative_l2
    );

    let std_report = temperature_invariance(&standard[0], &standard[1]).unwrap();
    let band = std_report.bands.iter().find(|b| b.lo_cm1 == 200.0).unwrap();
    assert!(
        band.relative_l2 > 0.3,
        "standard band difference {}",
        band.relative_l2
    );

    pass(
        4,
        format!(
            "harmonic J temperature-invariant (l2 {:.4} < 0.05); standard J differs in the \
             [200,600) band ({:.3} > 0.3)",
            harm.relative_l2, band.relative_l2
        ),
    );
}

#[test]
fn criterion_05_prefactor_table_values() {
    // Derived Table values at x = 1, recomputed independently; the
    // Schofield-Harmonic G entry is e^(1/4) sqrt(1/(1 - e^-1)) = 1.615004.
    let g_at_one = [
        (CorrectionKind::Standard, 1.46212),
        (CorrectionKind::Harmonic, 1.58198),
        (CorrectionKind::Schofield, 1.64872),
        (CorrectionKind::SchofieldHarmonic, 1.61500),
    ];
    for (kind, expected) in g_at_one {
        assert!((g_prefactor(kind, 1.0).unwrap() - expected).abs() < 1e-5);
    }
    let j_at_one = [
        (CorrectionKind::Standard, 0.46212),
        (CorrectionKind::Harmonic, 0.5),
        (CorrectionKind::Schofield, 0.52110),
        (CorrectionKind::SchofieldHarmonic, 0.51044),
    ];
    for (kind, expected) in j_at_one {
        assert!((j_prefactor(kind, 1.0).unwrap() - expected).abs() < 1e-5);
    }
    // x = -1: direct evaluations of the same expressions.
    let g_at_minus_one = [
        (CorrectionKind::Standard, 0.53788),
        (CorrectionKind::Harmonic, 0.58198),
        (CorrectionKind::Schofield, 0.60653),
        (CorrectionKind::SchofieldHarmonic, 0.59412),
    ];
    for (kind, expected) in g_at_minus_one {
        assert!((g_prefactor(kind, -1.0).unwrap() - expected).abs() < 1e-5);
    }
    for (kind, expected) in [
        (CorrectionKind::Standard, -0.46212),
        (CorrectionKind::Harmonic, -0.5),
        (CorrectionKind::Schofield, -0.52110),
        (CorrectionKind::SchofieldHarmonic, 0.51044), // even prefactor
    ] {
        assert!((j_prefactor(kind, -1.0).unwrap() - expected).abs() < 1e-5);
    }
    // Guarded zero-frequency limits.
    for kind in CorrectionKind::POINTWISE {
        assert_eq!(g_prefactor(kind, 0.0).unwrap(), 1.0);
        assert_eq!(j_prefactor(kind, 0.0).unwrap(), 0.0);
    }
    pass(
        5,
        "all Table prefactor values at x in {0, +-1} match to 1e-5",
    );
}

#[test]
fn criterion_06_window_parameters() {
    let window = WindowSpec::new(0.09, 1600.0).unwrap();
    assert!((window.sigma_t_sq() - 2.304e5).abs() < 1e-6);
    let fwhm = window_kernel_fwhm(&window, DT);
    assert!((fwhm - 26.0).abs() < 0.5, "fwhm {fwhm}");
    pass(
        6,
        format!(
            "sigma_t^2 = {:.4e} fs^2; measured frequency-kernel FWHM = {fwhm:.2} cm^-1",
            window.sigma_t_sq()
        ),
    );
}

#[test]
fn criterion_07_three_time_discrimination() {
    let modes = single_mode();
    let c = ctx(300.0);
    let report_for = |form: &CouplingForm| {
        let traj = concatenated_trace(
            &modes,
            &c,
            InitialDistribution::Boltzmann,
            form,
            4,
            2500,
            DT,
            99,
        )
        .unwrap();
        assert_eq!(traj.len(), 10_000);
        let c2 = two_time_correlator(&traj, 400).unwrap();
        let c3 = three_time_correlator(&traj, 60, 60).unwrap();
        three_point_significance(&traj, &c2, &c3, 120, 7).unwrap()
    };

    let linear = report_for(&CouplingForm::Linear);
    assert!(
        linear.three_time_peak <= linear.noise_floor,
        "linear peak {} vs floor {}",
        linear.three_time_peak,
        linear.noise_floor
    );

    let xi = QuadraticCoupling::diagonal_fraction(&modes, &c, 0.1).unwrap();
    let quadratic = report_for(&CouplingForm::Quadratic(xi));
    assert!(
        quadratic.three_time_peak > quadratic.noise_floor,
        "quadratic peak {} vs floor {}",
        quadratic.three_time_peak,
        quadratic.noise_floor
    );

    pass(
        7,
        format!(
            "linear trace peak {:.4} <= floor {:.4}; quadratic trace peak {:.4} > floor {:.4}",
            linear.three_time_peak,
            linear.noise_floor,
            quadratic.three_time_peak,
            quadratic.noise_floor
        ),
    );
}

#[test]
fn criterion_08_reconstruction_round_trip() {
    let modes = three_modes();
    let c = ctx(300.0);
    let grid = symmetric_grid(500.0, 0.2);
    let j = analytic_j(&modes, 0.8, &grid).unwrap();

    let times: Vec<f64> = (-400..=400).map(|k| k as f64 * 2.0).collect();
    let reconstructed = reconstruct_correlator(&j, &c, &times).unwrap();
    let truth = analytic_quantum_alpha(&modes, &c, &times);

    let scale = truth.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let worst = reconstructed
        .iter()
        .zip(&truth)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale;
    assert!(worst < 0.02, "max relative error {worst}");

    // C(-t) = conj(C(t)).
    let n = times.len();
    for i in 0..n {
        let diff = (reconstructed[i] - reconstructed[n - 1 - i].conj()).norm();
        assert!(diff <= 1e-10 * scale, "hermiticity violated: {diff:e}");
    }

    pass(
        8,
        format!("max relative reconstruction error {worst:.4} over [-800, 800] fs; C(-t) = C*(t)"),
    );
}

#[test]
fn criterion_09_estimator_micro_tests() {
    let traj = GapTrajectory::new(1.0, vec![1.0, -1.0, 1.0, -1.0], 300.0, String::new()).unwrap();
    let c2 = two_time_correlator(&traj, 2).unwrap();
    assert_eq!(c2.values, vec![1.0, -1.0, 1.0]);
    let c3 = three_time_correlator(&traj, 1, 1).unwrap();
    assert_eq!(c3.value(1, 1), 0.0);
    pass(9, "hand-derived estimator values reproduced exactly");
}

#[test]
fn criterion_10_egelstaff_runs_and_warns() {
    let modes = three_modes();
    let c = ctx(300.0);
    let times = lag_grid(401);
    let alpha = analytic_alpha_boltzmann(&modes, &c, &times);
    let series = CorrelationSeries::from_values(DT, alpha).unwrap();
    let windowed = apply_gaussian_window(&series, &WindowSpec::new(0.09, 1600.0).unwrap());
    let grid = symmetric_grid(2000.0, 1.0);

    let out = egelstaff_correct(&windowed, &c, &grid).unwrap();
    assert!(out.j.values.iter().all(|v| v.is_finite()));
    assert!(out.corrected_g.values.iter().all(|v| v.is_finite()));

    let has_negative = out
        .j
        .frequencies
        .iter()
        .zip(&out.j.values)
        .any(|(&nu, &v)| nu > 0.0 && v < 0.0);
    assert!(
        has_negative,
        "expected the documented low-frequency pathology"
    );
    assert!(!out.warnings.is_empty(), "negative J must be warned about");

    pass(
        10,
        format!(
            "egelstaff pipeline completed; negative J reported as warning: {:?}",
            out.warnings[0]
        ),
    );
}
