//! Independent checks for `gupnoise-core`: stochastic simulation of the oscillator,
//! numerical Fourier transforms of the analytic correlations, and exact traces in a
//! truncated Fock space.
//!
//! Everything here works in `f64`. The oracles are separate numerical machinery,
//! not the formulas they test.

pub mod adjudication;
pub mod correlation;
pub mod fock;
pub mod langevin;
pub mod psd;
pub mod quadrature;

pub use adjudication::{adjudicate, AdjudicationReport};
pub use correlation::{corr_perturbed, corr_white_explicit, ExponentialSum, TermLabel};
pub use fock::{fock_thermal_oracle, pt_identity_check, FockOracleResult, Observable};
pub use langevin::{simulate_langevin, Scheme, SimConfig, SimResult};
pub use psd::PsdEstimate;
pub use quadrature::{spectrum_by_quadrature, DecayingCorrelation, Integral};
