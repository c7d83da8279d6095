//! Nonstatic quantum light waves in Fock states propagating through a static,
//! transparent medium.
//!
//! The crate evaluates the breathing envelope `f(t)`, the generalized Fock
//! eigenfunctions built on it, and the geometric, dynamical and total phases
//! (plus the Hannay angle) those states accumulate. The [`oracle`] module
//! re-derives every closed form numerically so the two routes can be checked
//! against each other.
//!
//! The math is generic over the floating point type (see [`Scalar`]); the
//! aliases below fix it to `f64`, which is what the verification suite uses.
//!
//! ```
//! use nonstatic_phase::{phases, Params, StateIndex};
//!
//! let params = Params::dimensionless(2.5, 0.5, 1.0).unwrap();
//! assert!((params.c() - 0.5).abs() < 1e-15);
//! let n = StateIndex::new(5).unwrap();
//! let record = phases::phase_record(&params, n, 1.0).unwrap();
//! assert!((record.gamma_g + record.gamma_d - record.gamma_total).abs() < 1e-10);
//! ```

pub mod envelope;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod phases;
pub mod scalar;
pub mod wavefunction;

pub use envelope::{CSign, EnvelopeParams};
pub use error::{Error, Result};
pub use numerics::{GridDescriptor, GridKind, QuadratureGrid, TimeGrid};
pub use oracle::{Check, OracleSettings, ValidationReport};
pub use phases::{GIntegrals, PhaseRates, PhaseRecord};
pub use scalar::Scalar;
pub use wavefunction::{Chirp, StateIndex, WaveSample};

/// Envelope parameters in double precision.
pub type Params = EnvelopeParams<f64>;
/// Envelope parameters in single precision.
pub type Params32 = EnvelopeParams<f32>;
/// Quadrature grid in double precision.
pub type Grid = QuadratureGrid<f64>;
/// Uniform time sampling in double precision.
pub type Times = TimeGrid<f64>;
/// Phase record in double precision.
pub type Record = PhaseRecord<f64>;
/// Complex amplitude in double precision.
pub type Amplitude = num_complex::Complex<f64>;
