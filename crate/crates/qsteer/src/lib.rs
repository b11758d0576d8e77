//! Entropic steering analysis for qudit pairs under universal cloning.
//!
//! A cloning machine fed one half of a maximally entangled qudit pair
//! leaves the four parties A (Alice), B (Bob), C and C′ (Charlie) in a pure
//! state parametrized by a d×d table λ of Bell weights. Each party measures
//! in two complementary bases (computational and Fourier), and a copy
//! certifies steering when its two-setting mutual-information sum exceeds
//! log₂d. This crate constructs those states, computes the sums in closed
//! form and through an independent Born-rule route, carries the Holevo-bound
//! chain that caps the two copies' totals at 2log₂d, and ships an explorer
//! binary (`qsteer`) for sweeps, simplex sampling, adversarial optimization,
//! and noise-threshold solving on top of it.
//!
//! Modules:
//!
//! - [`qudit`] — dense complex linear algebra, bases, Bell states, entropies.
//! - [`cloning`] — λ tables, preset families, the cloned four-partite state
//!   and its reductions.
//! - [`steering`] — measurement statistics, the steering criterion, bounds,
//!   and the per-λ report.
//! - [`ss`] — the single-system scenario, statistically identical to the
//!   entangled-pair one.
//! - [`explorer`] — seeded sampling, sweeps, optimization, thresholds, and
//!   byte-stable JSON/CSV rendering.

pub mod cloning;
pub mod error;
pub mod explorer;
pub mod qudit;
pub mod ss;
pub mod steering;

pub use error::{Error, Result};
