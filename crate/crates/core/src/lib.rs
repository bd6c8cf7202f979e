//! Noise spectra of an optomechanical oscillator under a generalized uncertainty
//! principle, and the bounds on the GUP strengths that observed spectra imply.
//!
//! Every formula is generic over [`Real`]; `f64` is the working type and the
//! double-double [`Df64`](xprec::Df64) is available where cancellation
//! near resonance exhausts double precision.

pub mod bounds;
pub mod error;
pub mod model;
pub mod presets;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use scalar::Real;
pub use xprec::Df64;

pub type Constants = model::PhysicalConstants<f64>;
pub type Experiment = model::ExperimentParams<f64>;
pub type Derived = model::DerivedParams<f64>;
pub type Gup = model::GupParams<f64>;
pub type Ledger = spectra::CoeffLedger<f64>;
pub type Series = spectra::SpectrumSeries<f64>;
pub type Bound = bounds::BoundReport<f64>;

/// Double-double variants for precision-critical evaluations.
pub type ConstantsDd = model::PhysicalConstants<Df64>;
pub type ExperimentDd = model::ExperimentParams<Df64>;
pub type DerivedDd = model::DerivedParams<Df64>;
pub type GupDd = model::GupParams<Df64>;
pub type LedgerDd = spectra::CoeffLedger<Df64>;
