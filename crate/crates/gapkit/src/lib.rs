//! Bath spectral densities from classical energy-gap time traces.
//!
//! The pipeline: estimate two-time (and three-time) correlators from a
//! uniformly sampled gap trajectory, apodize with a Gaussian window,
//! cosine-transform into the classical coupling density G(omega), and apply
//! one of five semiclassical detailed-balance corrections to obtain the
//! asymmetric coupling density J(omega) and the spectral density j(omega).
//!
//! A shifted-harmonic-surface bath simulator ([`oracle`]) provides Boltzmann
//! and Wigner phase-space sampling, exact classical propagation, and the
//! closed-form correlators and spectral densities that the whole pipeline can
//! be checked against.
//!
//! ```
//! use gapkit::oracle::{analytic_alpha_boltzmann, BathMode, BathModeSet};
//! use gapkit::units::PhysicalContext;
//!
//! let ctx = PhysicalContext::new(300.0)?;
//! let bath = BathModeSet::new(vec![BathMode { omega: 100.0, huang_rhys: 0.5 }])?;
//! let alpha0 = analytic_alpha_boltzmann(&bath, &ctx, &[0.0])[0];
//! assert!((alpha0 - 20_851.0).abs() < 1.0); // cm^-2
//! # Ok::<(), gapkit::Error>(())
//! ```
//!
//! The `gapkit` binary exposes the same pipeline as subcommands
//! (`correlate`, `threepoint`, `spectrum`, `correct`, `oracle`,
//! `compare-temps`, `significance`); the `examples/` directory holds one
//! runnable walkthrough per capability.

pub mod cli;
pub mod corrections;
pub mod correlators;
pub mod diagnostics;
mod error;
pub mod oracle;
pub mod spectral;
pub mod trajectory;
pub mod units;

pub use error::{Error, Result};
