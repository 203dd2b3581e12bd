//! Monte Carlo gap correlators against their closed forms.
//!
//! Samples a single-mode harmonic bath from the Boltzmann and the Wigner
//! phase-space densities, propagates each draw exactly, and compares the
//! ensemble-averaged correlator with the analytic expressions at every lag.
//!
//! Run: cargo run --release --example oracle_vs_analytic

use gapkit::oracle::{
    analytic_alpha_boltzmann, analytic_alpha_wigner, analytic_quantum_alpha, mc_correlator,
    BathMode, BathModeSet, CouplingForm, InitialDistribution,
};
use gapkit::units::PhysicalContext;

fn main() -> gapkit::Result<()> {
    let ctx = PhysicalContext::new(300.0)?;
    let bath = BathModeSet::new(vec![BathMode {
        omega: 100.0,
        huang_rhys: 0.5,
    }])?;
    let times: Vec<f64> = (0..=400).map(|k| k as f64 * 4.0).collect();
    let n_samples = 100_000;

    eprintln!(
        "single mode: Omega = 100 cm^-1, X = 0.5, T = 300 K, {n_samples} samples, \
         lags 0..1600 fs"
    );
    eprintln!(
        "reorganization energy = {} cm^-1, kappa^2 = {} cm^-2\n",
        bath.reorganization_energy(),
        bath.modes()[0].kappa().powi(2)
    );

    for dist in [InitialDistribution::Boltzmann, InitialDistribution::Wigner] {
        let mc = mc_correlator(
            &bath,
            &ctx,
            dist,
            &CouplingForm::Linear,
            n_samples,
            &times,
            3,
        )?;
        let reference = match dist {
            InitialDistribution::Boltzmann => analytic_alpha_boltzmann(&bath, &ctx, &times),
            InitialDistribution::Wigner => analytic_alpha_wigner(&bath, &ctx, &times),
        };
        let worst = mc
            .series
            .values
            .iter()
            .zip(&mc.std_err)
            .zip(&reference)
            .map(|((v, e), r)| (v - r).abs() / e)
            .fold(0.0, f64::max);
        println!(
            "{dist:>9}: alpha(0) mc = {:9.1} cm^-2, exact = {:9.1} cm^-2, worst lag \
             deviation = {worst:.2} standard errors",
            mc.series.values[0], reference[0]
        );
    }

    // The Wigner correlator is the real part of the quantum one, term by term.
    let quantum = analytic_quantum_alpha(&bath, &ctx, &times);
    let wigner = analytic_alpha_wigner(&bath, &ctx, &times);
    let max_gap = quantum
        .iter()
        .zip(&wigner)
        .map(|(q, w)| (q.re - w).abs())
        .fold(0.0, f64::max);
    println!("\nmax |Re alpha_quantum - alpha_wigner| = {max_gap:.2e} cm^-2");
    Ok(())
}
