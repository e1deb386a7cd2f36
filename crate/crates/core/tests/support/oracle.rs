//! Dense-matrix oracle: every operator built as a full `2^q x 2^q` matrix
//! and applied by plain matrix-vector products, plus seeded random inputs.
//! Shared with the acceptance suite of the `phaseprobe` crate.

#![allow(dead_code)]

use phaseprobe_core::{ComplexAmplitude as Complex64, PhaseShiftSpec, StateVector};

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| c(if i == j { 1.0 } else { 0.0 })).collect())
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn apply(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn hadamard_2x2() -> Matrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![vec![c(h), c(h)], vec![c(h), c(-h)]]
}

/// H on qubit `k` of `q`; qubit 0 is the leftmost Kronecker factor.
pub fn dense_hadamard_on(q: u32, k: u32) -> Matrix {
    (0..q).fold(identity(1), |acc, j| {
        let factor = if j == k { hadamard_2x2() } else { identity(2) };
        kron(&acc, &factor)
    })
}

pub fn dense_hadamard_all(q: u32) -> Matrix {
    (0..q).fold(identity(1), |acc, _| kron(&acc, &hadamard_2x2()))
}

pub fn dense_phase(q: u32, marked: usize, theta: f64) -> Matrix {
    let mut m = identity(1 << q);
    m[marked][marked] = Complex64::from_polar(1.0, theta);
    m
}

/// `2/N · J − I`.
pub fn dense_reflection(q: u32) -> Matrix {
    let n = 1usize << q;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| c(2.0 / n as f64 - if i == j { 1.0 } else { 0.0 }))
                .collect()
        })
        .collect()
}

/// Success probability of `k` Grover rounds computed with dense matrices.
pub fn grover_success(q: u32, marked: usize, k: u32) -> f64 {
    let mut v = vec![c(0.0); 1 << q];
    v[0] = c(1.0);
    v = apply(&dense_hadamard_all(q), &v);
    let round = matmul(
        &dense_reflection(q),
        &dense_phase(q, marked, std::f64::consts::PI),
    );
    for _ in 0..k {
        v = apply(&round, &v);
    }
    v[marked].norm_sqr()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Three-sigma half-width for a Binomial(n, p) count.
pub fn three_sigma(n: u64, p: f64) -> f64 {
    3.0 * (n as f64 * p * (1.0 - p)).sqrt()
}

/// Deterministic random normalized state drawn from a seeded trial stream.
pub fn seeded_state(q: u32, seed: u64, index: u64) -> StateVector {
    use phaseprobe_core::rng::{trial_rng, uniform};
    let mut rng = trial_rng(seed, index);
    loop {
        let v: Vec<Complex64> = (0..1usize << q)
            .map(|_| Complex64::new(2.0 * uniform(&mut rng) - 1.0, 2.0 * uniform(&mut rng) - 1.0))
            .collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return StateVector::from_amplitudes(v.into_iter().map(|a| a / norm).collect())
                .unwrap();
        }
    }
}

/// Random valid circuit from a seeded stream; used where proptest shrinking
/// is not needed.
pub fn seeded_circuit(seed: u64, index: u64, with_checkpoints: bool) -> phaseprobe_core::Circuit {
    use phaseprobe_core::rng::{trial_rng, uniform};
    use phaseprobe_core::{BasisIndex, Circuit, HadamardTarget, Stage};
    use std::f64::consts::PI;

    let mut rng = trial_rng(seed, index);
    let mut below = |n: u64| (uniform(&mut rng) * n as f64) as u64;
    let q = 1 + below(4) as u32;
    let dim = 1u64 << q;
    let len = below(9);
    let mut stages = Vec::new();
    for _ in 0..len {
        let stage = match below(if with_checkpoints { 6 } else { 5 }) {
            0 => Stage::Hadamard(HadamardTarget::Qubit(below(q as u64) as u32)),
            1 => Stage::Hadamard(HadamardTarget::All),
            2 => Stage::PhaseShift(PhaseShiftSpec::flip(BasisIndex(below(dim) as usize))),
            3 => {
                let theta = match below(4) {
                    0 => PI / 2.0,
                    1 => -PI,
                    2 => (below(7) as f64 - 3.0) * PI / (1 + below(8)) as f64,
                    _ => (below(1 << 20) as f64 - (1 << 19) as f64) / 1000.0,
                };
                Stage::PhaseShift(
                    PhaseShiftSpec::new(BasisIndex(below(dim) as usize), theta).unwrap(),
                )
            }
            4 => Stage::Diffuse,
            _ => Stage::Checkpoint(format!("cp{}", below(100))),
        };
        stages.push(stage);
    }
    if below(2) == 1 {
        stages.push(Stage::Measure);
    }
    let initial = BasisIndex(below(dim) as usize);
    Circuit::new(q, stages)
        .unwrap()
        .with_initial(initial)
        .unwrap()
}
