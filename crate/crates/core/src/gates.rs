//! Hadamard, conditional phase shift and inversion about the mean.
//!
//! All gates act in place on a working copy by walking index pairs; no
//! `2^q x 2^q` matrix is ever built. The free functions return new states,
//! the `apply_*` methods on [`StateVector`] mutate.

use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::state::{BasisIndex, StateVector};
use crate::{Error, Result};

/// Marked basis state and rotation angle (radians) of a conditional phase
/// shift. `theta = π` is the conditional phase flip.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseShiftSpec {
    pub marked: BasisIndex,
    pub theta: f64,
}

impl PhaseShiftSpec {
    pub fn new(marked: BasisIndex, theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        Ok(PhaseShiftSpec { marked, theta })
    }

    /// The conditional phase flip on `marked`.
    pub fn flip(marked: BasisIndex) -> Self {
        PhaseShiftSpec { marked, theta: PI }
    }

    pub fn is_flip(&self) -> bool {
        self.theta == PI
    }
}

/// `e^{iθ}`, exact at the quarter turns that circuits use most.
pub fn phase_factor(theta: f64) -> Complex64 {
    match theta {
        0.0 => Complex64::new(1.0, 0.0),
        t if t == PI || t == -PI => Complex64::new(-1.0, 0.0),
        t if t == FRAC_PI_2 => Complex64::new(0.0, 1.0),
        t if t == -FRAC_PI_2 => Complex64::new(0.0, -1.0),
        t => Complex64::new(libm::cos(t), libm::sin(t)),
    }
}

/// Inputs and result of one inversion about the mean.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionTrace {
    /// Arithmetic mean of the signed amplitudes before the reflection.
    pub mean: Complex64,
    pub before: StateVector,
    pub after: StateVector,
}

impl StateVector {
    fn check_qubit(&self, qubit: u32) -> Result<()> {
        if qubit >= self.qubits() {
            return Err(Error::QubitOutOfRange {
                qubit,
                qubits: self.qubits(),
            });
        }
        Ok(())
    }

    fn butterfly(&mut self, qubit: u32, scale: f64) {
        let stride = 1usize << (self.qubits() - 1 - qubit);
        let amps = self.amps_mut();
        for block in amps.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi) {
                let (x, y) = (*a0, *a1);
                *a0 = (x + y) * scale;
                *a1 = (x - y) * scale;
            }
        }
    }

    /// Hadamard on qubit `qubit` (0 = leftmost ket label).
    pub fn apply_hadamard(&mut self, qubit: u32) -> Result<()> {
        self.check_qubit(qubit)?;
        self.butterfly(qubit, FRAC_1_SQRT_2);
        Ok(())
    }

    /// Hadamard on every qubit.
    ///
    /// The butterflies run unscaled and the `2^{-q/2}` factor is applied once
    /// at the end, which is exact for even `q`.
    pub fn apply_hadamard_all(&mut self) {
        let q = self.qubits();
        for k in 0..q {
            self.butterfly(k, 1.0);
        }
        let mut scale = libm::pow(0.5, (q / 2) as f64);
        if q % 2 == 1 {
            scale *= FRAC_1_SQRT_2;
        }
        for a in self.amps_mut() {
            *a *= scale;
        }
    }

    pub fn apply_phase_shift(&mut self, spec: &PhaseShiftSpec) -> Result<()> {
        let marked = BasisIndex::checked(spec.marked.0, self.qubits())?;
        if !spec.theta.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        let factor = phase_factor(spec.theta);
        let a = &mut self.amps_mut()[marked.0];
        if factor == Complex64::new(-1.0, 0.0) {
            *a = -*a;
        } else {
            *a *= factor;
        }
        Ok(())
    }

    /// Reflects every amplitude about the mean: `a_i -> 2μ - a_i`. Returns μ.
    pub fn apply_inversion_about_mean(&mut self) -> Complex64 {
        let n = self.dim() as f64;
        let re = exact_sum(self.amplitudes().iter().map(|a| a.re));
        let im = exact_sum(self.amplitudes().iter().map(|a| a.im));
        // n is a power of two, so the division is exact
        let mean = Complex64::new(re / n, im / n);
        let twice = mean * 2.0;
        for a in self.amps_mut() {
            *a = twice - *a;
        }
        mean
    }

    /// Hadamard on all qubits, phase flip on `|0…0>`, Hadamard on all qubits.
    /// Equal to `-1` times the inversion about the mean.
    pub fn apply_diffusion_via_hadamards(&mut self) {
        self.apply_hadamard_all();
        let a = &mut self.amps_mut()[0];
        *a = -*a;
        self.apply_hadamard_all();
    }
}

/// Correctly rounded floating-point sum (Shewchuk's algorithm). The result
/// does not depend on the order of the inputs, which keeps the mean
/// invariant under permutations of the basis.
fn exact_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for mut x in values {
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                core::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }
    let Some(mut hi) = partials.pop() else {
        return 0.0;
    };
    let mut lo = 0.0;
    while let Some(y) = partials.pop() {
        let x = hi;
        hi = x + y;
        lo = y - (hi - x);
        if lo != 0.0 {
            break;
        }
    }
    // round-half-even correction when the remaining partials push past a tie
    if let Some(&next) = partials.last() {
        if (lo < 0.0 && next < 0.0) || (lo > 0.0 && next > 0.0) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
    }
    hi
}

pub fn hadamard_on_qubit(state: &StateVector, qubit: u32) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply_hadamard(qubit)?;
    Ok(out)
}

pub fn hadamard_all(state: &StateVector) -> StateVector {
    let mut out = state.clone();
    out.apply_hadamard_all();
    out
}

pub fn conditional_phase_shift(state: &StateVector, spec: &PhaseShiftSpec) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply_phase_shift(spec)?;
    Ok(out)
}

pub fn inversion_about_mean(state: &StateVector) -> (StateVector, InversionTrace) {
    let mut after = state.clone();
    let mean = after.apply_inversion_about_mean();
    let trace = InversionTrace {
        mean,
        before: state.clone(),
        after: after.clone(),
    };
    (after, trace)
}

pub fn diffusion_via_hadamards(state: &StateVector) -> StateVector {
    let mut out = state.clone();
    out.apply_diffusion_via_hadamards();
    out
}
