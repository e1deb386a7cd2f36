//! Amplitudes, registers and measurement statistics.
//!
//! Basis states are indexed with the leftmost ket label as the most
//! significant bit: with two qubits `|11>` is index 3 and `|01>` is index 1.
//! Qubit `k` is the `k`-th label from the left.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_core::RngCore;

use crate::{rng, Error, Result, MAX_QUBITS};

/// A probability amplitude.
pub type ComplexAmplitude = Complex64;

/// Tolerance used when validating that a state is normalized.
pub const NORM_TOLERANCE: f64 = 1e-9;

pub(crate) fn check_qubits(qubits: u32) -> Result<()> {
    if qubits == 0 || qubits > MAX_QUBITS {
        return Err(Error::InvalidQubitCount(qubits));
    }
    Ok(())
}

/// A computational basis state label.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex(pub usize);

impl BasisIndex {
    /// Validates `value` against a register of `qubits` qubits.
    pub fn checked(value: usize, qubits: u32) -> Result<Self> {
        check_qubits(qubits)?;
        if value >> qubits != 0 {
            return Err(Error::BasisIndexOutOfRange {
                index: value,
                qubits,
            });
        }
        Ok(BasisIndex(value))
    }

    /// Parses a ket label such as `"101"`; the first character is qubit 0.
    pub fn from_bitstring(bits: &str) -> Result<Self> {
        let len = bits.chars().count();
        if len == 0 || len > MAX_QUBITS as usize {
            return Err(Error::InvalidQubitCount(len as u32));
        }
        let mut value = 0usize;
        for c in bits.chars() {
            value <<= 1;
            match c {
                '0' => {}
                '1' => value |= 1,
                _ => return Err(Error::InvalidBitstring(bits.into())),
            }
        }
        Ok(BasisIndex(value))
    }

    /// Like [`BasisIndex::from_bitstring`] but also requires the label to
    /// have exactly `qubits` characters.
    pub fn from_bitstring_for(bits: &str, qubits: u32) -> Result<Self> {
        let index = Self::from_bitstring(bits)?;
        let len = bits.chars().count();
        if len != qubits as usize {
            return Err(Error::BitstringLength { len, qubits });
        }
        Ok(index)
    }

    pub fn value(self) -> usize {
        self.0
    }

    pub fn to_bitstring(self, qubits: u32) -> String {
        (0..qubits)
            .map(|k| {
                if (self.0 >> (qubits - 1 - k)) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }
}

/// A normalized register of `2^q` amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: u32,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The basis state `|index>` on `qubits` qubits.
    pub fn basis(qubits: u32, index: usize) -> Result<Self> {
        let index = BasisIndex::checked(index, qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index.0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amps })
    }

    /// Wraps an amplitude list, checking its length is a power of two and
    /// that it is normalized to within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::BadDimension(len));
        }
        let qubits = len.trailing_zeros();
        check_qubits(qubits).map_err(|_| Error::BadDimension(len))?;
        let state = StateVector { qubits, amps };
        let n = state.norm_sqr();
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(n));
        }
        Ok(state)
    }

    /// Convenience for real amplitude lists such as `[0.5, 0.5, 0.5, -0.5]`.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    /// Number of basis states, `2^q`.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: BasisIndex) -> Complex64 {
        self.amps[index.0]
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Born-rule probabilities `|a_i|^2`, indexed by basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Multiplies every amplitude by `phase`, which should have unit modulus.
    pub fn with_global_phase(mut self, phase: Complex64) -> Self {
        for a in &mut self.amps {
            *a *= phase;
        }
        self
    }

    /// Samples a measurement outcome in the computational basis.
    ///
    /// Consumes exactly one `u64` from `rng` (see [`crate::rng::uniform`]).
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> BasisIndex {
        BasisIndex(rng::pick_index(&self.probabilities(), rng))
    }

    /// Whether `self = c * other` for some unit complex `c`, with every
    /// component within `tol`.
    ///
    /// `c` is taken from the largest-magnitude component of `other`.
    pub fn equal_up_to_global_phase(&self, other: &StateVector, tol: f64) -> Result<bool> {
        if self.qubits != other.qubits {
            return Err(Error::QubitCountMismatch {
                left: self.qubits,
                right: other.qubits,
            });
        }
        let (pivot, _) = other
            .amps
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, b)| {
                let m = b.norm_sqr();
                if m > best.1 {
                    (i, m)
                } else {
                    best
                }
            });
        let ratio = if other.amps[pivot] == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            self.amps[pivot] / other.amps[pivot]
        };
        let phase = if ratio.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            ratio / ratio.norm()
        };
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .all(|(a, b)| (a - phase * b).norm() <= tol))
    }
}

/// `½ Σ |p_i − q_i|` between two distributions over the same outcomes.
pub fn total_variation(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::OutcomeSpaceMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Outcome counts from an ensemble of trials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementDistribution {
    qubits: u32,
    counts: Vec<u64>,
    trials: u64,
}

impl MeasurementDistribution {
    pub fn new(qubits: u32) -> Result<Self> {
        check_qubits(qubits)?;
        Ok(MeasurementDistribution {
            qubits,
            counts: vec![0; 1 << qubits],
            trials: 0,
        })
    }

    pub fn from_counts(qubits: u32, counts: Vec<u64>) -> Result<Self> {
        check_qubits(qubits)?;
        if counts.len() != 1 << qubits {
            return Err(Error::OutcomeSpaceMismatch {
                left: counts.len(),
                right: 1 << qubits,
            });
        }
        let trials = counts.iter().sum();
        Ok(MeasurementDistribution {
            qubits,
            counts,
            trials,
        })
    }

    /// Panics if `outcome` is outside the register.
    pub fn record(&mut self, outcome: BasisIndex) {
        self.counts[outcome.0] += 1;
        self.trials += 1;
    }

    /// Adds another distribution's counts into this one.
    pub fn merge(&mut self, other: &MeasurementDistribution) -> Result<()> {
        if self.qubits != other.qubits {
            return Err(Error::QubitCountMismatch {
                left: self.qubits,
                right: other.qubits,
            });
        }
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self.trials += other.trials;
        Ok(())
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, outcome: BasisIndex) -> u64 {
        self.counts[outcome.0]
    }

    /// `counts[i] / trials`, or 0 when no trials were recorded.
    pub fn frequency(&self, outcome: BasisIndex) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.counts[outcome.0] as f64 / self.trials as f64
        }
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.counts.len())
            .map(|i| self.frequency(BasisIndex(i)))
            .collect()
    }
}
