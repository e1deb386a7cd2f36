//! Test-only helpers.

#![allow(dead_code)]

mod oracle;

pub use oracle::*;

use phaseprobe_core::{ComplexAmplitude as Complex64, StateVector};
use proptest::prelude::*;

/// Random normalized state on 1..=max_qubits qubits.
pub fn any_state(max_qubits: u32) -> impl Strategy<Value = StateVector> {
    (1..=max_qubits).prop_flat_map(|q| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << q)
            .prop_filter("non-degenerate", |v| {
                v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3
            })
            .prop_map(|v| {
                let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
                let amps = v
                    .into_iter()
                    .map(|(a, b)| Complex64::new(a / norm, b / norm))
                    .collect();
                StateVector::from_amplitudes(amps).unwrap()
            })
    })
}
