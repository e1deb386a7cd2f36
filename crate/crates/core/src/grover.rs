//! Single-marked-item Grover search.
//!
//! Starts from `|0…0>`, applies Hadamard to every qubit, then repeats
//! `[phase flip on marked; inversion about the mean]`.

use core::f64::consts::PI;

use crate::gates::PhaseShiftSpec;
use crate::state::{BasisIndex, StateVector};
use crate::Result;

/// How the diffusion step of each iteration is carried out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Diffusion {
    /// Direct reflection of the amplitudes about their mean.
    #[default]
    Reflection,
    /// Hadamard, flip `|0…0>`, Hadamard. Differs from the reflection by a
    /// global phase of `-1` only.
    Hadamard,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroverRun {
    pub qubits: u32,
    pub marked: BasisIndex,
    pub iterations: u32,
    pub final_state: StateVector,
    /// `|a_marked|^2` of the final state.
    pub success_probability: f64,
}

pub fn grover_search(qubits: u32, marked: BasisIndex, iterations: u32) -> Result<GroverRun> {
    grover_search_with(qubits, marked, iterations, Diffusion::Reflection)
}

pub fn grover_search_with(
    qubits: u32,
    marked: BasisIndex,
    iterations: u32,
    diffusion: Diffusion,
) -> Result<GroverRun> {
    let marked = BasisIndex::checked(marked.0, qubits)?;
    let mut state = StateVector::basis(qubits, 0)?;
    state.apply_hadamard_all();
    let oracle = PhaseShiftSpec::flip(marked);
    for _ in 0..iterations {
        state.apply_phase_shift(&oracle)?;
        match diffusion {
            Diffusion::Reflection => {
                state.apply_inversion_about_mean();
            }
            Diffusion::Hadamard => state.apply_diffusion_via_hadamards(),
        }
    }
    let success_probability = state.amplitude(marked).norm_sqr();
    Ok(GroverRun {
        qubits,
        marked,
        iterations,
        final_state: state,
        success_probability,
    })
}

/// Rotation angle per half-iteration, `arcsin(2^{-q/2})`.
pub fn grover_angle(qubits: u32) -> f64 {
    libm::asin(libm::pow(2.0, -(qubits as f64) / 2.0))
}

/// `sin^2((2k+1)·θ)` for `k` iterations.
pub fn analytic_success_probability(qubits: u32, iterations: u32) -> f64 {
    let s = libm::sin((2 * iterations + 1) as f64 * grover_angle(qubits));
    s * s
}

/// `round(π / (4θ) − ½)`, at least 1.
pub fn optimal_iterations(qubits: u32) -> u32 {
    let k = libm::round(PI / (4.0 * grover_angle(qubits)) - 0.5);
    (k as u32).max(1)
}
