//! Dense state-vector simulation of small conditional-phase-flip circuits.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`state`]: amplitudes, registers, Born probabilities and seeded sampling.
//! - [`gates`]: Hadamard, conditional phase shift and inversion about the mean.
//! - [`grover`]: single-marked-item Grover search built from those gates.
//! - [`interpretation`]: circuits executed under unitary or collapse semantics,
//!   exactly (branch enumeration) or by Monte Carlo ensembles.
//! - [`dsl`]: the line-oriented `.qc` circuit language.
//!
//! IO, parallel ensembles and report rendering live in the `phaseprobe` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dsl;
mod error;
pub mod gates;
pub mod grover;
pub mod interpretation;
pub mod numfmt;
pub mod rng;
pub mod state;

pub use error::{Error, Result};
pub use gates::{InversionTrace, PhaseShiftSpec};
pub use grover::GroverRun;
pub use interpretation::{
    Builtin, Circuit, CollapseRule, Engine, HadamardTarget, InterpretationModel, Stage, TrialRecord,
};
pub use state::{BasisIndex, ComplexAmplitude, MeasurementDistribution, StateVector};

/// Upper bound on register width. The dense representation stores `2^q`
/// amplitudes, so anything wider is outside what this crate is meant for.
pub const MAX_QUBITS: u32 = 24;
