//! Pulse-level simulator and analytics toolkit for mid-circuit measurement
//! (MCM) on a single-species Cs neutral-atom qubit array.
//!
//! The crate is organized around the stages of an MCM experiment:
//!
//! - [`atomic`] — static physics of the Cs ground manifold: level energies,
//!   transition frequencies, microwave couplings, photon-scattering rates.
//! - [`pulse`] — unitary evolution of the 16-level amplitude vector under
//!   microwave pulses: CORPSE composites, two-horn polarization synthesis,
//!   shelving solvers, quasi-static dephasing noise.
//! - [`sequence`] — compiler for the timed MCM characterization schedule and
//!   the trap-power ramp plans, producing a validated [`sequence::SequenceIr`].
//! - [`readout`] — stochastic Monte-Carlo fluorescence readout: photon
//!   scattering, depumping, heating and loss, photoelectron statistics,
//!   histogramming and threshold classification.
//! - [`experiment`] — shot-level orchestration tying sequence, pulse, and
//!   readout together (fidelity runs, Ramsey scans, retention experiments).
//! - [`spam`] — SPAM-correction algebra with first-order uncertainty
//!   propagation.
//! - [`budget`] — analytic shift-out error budget: scattering probability,
//!   light shifts, detuned-rotation population errors, total-error optimum,
//!   photon/time budgets.
//! - [`cooling`] — semi-classical 1-D Sisyphus cooling calculator for the
//!   685-nm quadrupole transition.
//!
//! All frequencies are stored internally as angular frequencies in rad/s;
//! the [`units`] module parses human-readable quantities with explicit unit
//! suffixes (Hz/kHz/MHz/GHz, µK/mK, µs/ms, G/mT).

pub mod angular;
pub mod atomic;
pub mod budget;
pub mod config;
pub mod cooling;
pub mod error;
pub mod experiment;
pub mod pulse;
pub mod quadrature;
pub mod readout;
pub mod report;
pub mod sequence;
pub mod spam;
pub mod units;

pub use error::{Error, Result};
