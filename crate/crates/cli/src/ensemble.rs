//! Parallel Monte Carlo ensembles.
//!
//! Trials are split into fixed-size blocks and each block is evaluated with
//! the per-trial generators of [`phaseprobe_core::rng::trial_rng`]. Counts
//! are summed, so the result is identical for any thread count.

use phaseprobe_core::{Circuit, Engine, MeasurementDistribution};
use rayon::prelude::*;

const BLOCK: u64 = 4096;

#[derive(Debug, thiserror::Error)]
pub enum EnsembleError {
    #[error(transparent)]
    Core(#[from] phaseprobe_core::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Runs `trials` seeded trials, on `threads` workers when given (otherwise
/// rayon's global pool).
pub fn run_parallel(
    engine: &Engine,
    circuit: &Circuit,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<MeasurementDistribution, EnsembleError> {
    if trials == 0 {
        return Err(phaseprobe_core::Error::EmptyEnsemble.into());
    }
    let work = || {
        let blocks = trials.div_ceil(BLOCK);
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let lo = b * BLOCK;
                engine.run_trial_range(circuit, seed, lo..(lo + BLOCK).min(trials))
            })
            .try_reduce(
                || MeasurementDistribution::new(circuit.qubits()).expect("valid circuit width"),
                |mut acc, d| {
                    acc.merge(&d)?;
                    Ok(acc)
                },
            )
    };
    let dist = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(work)?,
        None => work()?,
    };
    Ok(dist)
}
