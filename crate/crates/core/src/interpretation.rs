//! Circuits executed under two measurement semantics.
//!
//! Under [`InterpretationModel::Unitary`] a checkpoint is the identity: the
//! full superposition flows through it. Under
//! [`InterpretationModel::Collapse`] the register is replaced at every
//! checkpoint by a single basis state, drawn from the Born weights of the
//! amplitudes arriving there (or from a caller-supplied distribution, see
//! [`CollapseRule`]).
//!
//! Each circuit can be evaluated exactly ([`Engine::run_exact`], which
//! enumerates collapse branches) or by sampling ([`Engine::run_trial`],
//! [`Engine::run_ensemble`]). A trial draws one uniform number per checkpoint
//! it collapses at and one for the final measurement, in stage order.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_core::RngCore;

use crate::gates::PhaseShiftSpec;
use crate::rng::{self, trial_rng};
use crate::state::{check_qubits, BasisIndex, MeasurementDistribution, StateVector};
use crate::{Error, Result};

/// Default cap on the number of branches [`Engine::run_exact`] may expand at
/// a single checkpoint.
pub const DEFAULT_BRANCH_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InterpretationModel {
    Unitary,
    Collapse,
}

impl InterpretationModel {
    pub fn name(self) -> &'static str {
        match self {
            InterpretationModel::Unitary => "unitary",
            InterpretationModel::Collapse => "collapse",
        }
    }
}

impl fmt::Display for InterpretationModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InterpretationModel {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "unitary" => Ok(InterpretationModel::Unitary),
            "collapse" => Ok(InterpretationModel::Collapse),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HadamardTarget {
    Qubit(u32),
    All,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stage {
    Hadamard(HadamardTarget),
    PhaseShift(PhaseShiftSpec),
    /// Inversion about the mean.
    Diffuse,
    /// Where the two semantics part ways.
    Checkpoint(String),
    /// Final computational-basis measurement.
    Measure,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// An ordered list of stages on a fixed register, starting from a basis state.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    qubits: u32,
    stages: Vec<Stage>,
    initial: BasisIndex,
}

impl Circuit {
    /// Builds a circuit starting from `|0…0>`, validating every stage.
    pub fn new(qubits: u32, stages: Vec<Stage>) -> Result<Self> {
        check_qubits(qubits)?;
        for (i, stage) in stages.iter().enumerate() {
            match stage {
                Stage::Hadamard(HadamardTarget::Qubit(k)) if *k >= qubits => {
                    return Err(Error::QubitOutOfRange { qubit: *k, qubits });
                }
                Stage::PhaseShift(spec) => {
                    BasisIndex::checked(spec.marked.0, qubits)?;
                    if !spec.theta.is_finite() {
                        return Err(Error::NonFiniteAngle);
                    }
                }
                Stage::Checkpoint(label) if !is_identifier(label) => {
                    return Err(Error::InvalidLabel(label.clone()));
                }
                Stage::Measure if i + 1 != stages.len() => {
                    return Err(Error::MeasureNotFinal(i));
                }
                _ => {}
            }
        }
        Ok(Circuit {
            qubits,
            stages,
            initial: BasisIndex(0),
        })
    }

    pub fn with_initial(mut self, initial: BasisIndex) -> Result<Self> {
        self.initial = BasisIndex::checked(initial.0, self.qubits)?;
        Ok(self)
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn initial(&self) -> BasisIndex {
        self.initial
    }

    pub fn has_measure(&self) -> bool {
        matches!(self.stages.last(), Some(Stage::Measure))
    }

    pub fn checkpoint_count(&self) -> usize {
        self.stages
            .iter()
            .filter(|s| matches!(s, Stage::Checkpoint(_)))
            .count()
    }

    fn initial_state(&self) -> StateVector {
        StateVector::basis(self.qubits, self.initial.0).expect("validated at construction")
    }
}

fn apply_gate(state: &mut StateVector, stage: &Stage) {
    // indices were validated when the circuit was built
    match stage {
        Stage::Hadamard(HadamardTarget::All) => state.apply_hadamard_all(),
        Stage::Hadamard(HadamardTarget::Qubit(k)) => {
            state.apply_hadamard(*k).expect("validated qubit");
        }
        Stage::PhaseShift(spec) => state.apply_phase_shift(spec).expect("validated phase"),
        Stage::Diffuse => {
            state.apply_inversion_about_mean();
        }
        Stage::Checkpoint(_) | Stage::Measure => {}
    }
}

/// Where the definite state at a collapse checkpoint comes from.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum CollapseRule {
    /// Born weights of the amplitudes reaching the checkpoint.
    #[default]
    Born,
    /// A fixed distribution over basis states, used at every checkpoint
    /// regardless of the amplitudes. Weights are normalized by their sum.
    Supplied(Vec<f64>),
}

impl CollapseRule {
    pub fn supplied(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("empty"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(
                "weights must be finite and non-negative",
            ));
        }
        if weights.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidWeights("weights sum to zero"));
        }
        Ok(CollapseRule::Supplied(weights))
    }

    fn check(&self, dim: usize) -> Result<()> {
        match self {
            CollapseRule::Supplied(w) if w.len() != dim => Err(Error::OutcomeSpaceMismatch {
                left: w.len(),
                right: dim,
            }),
            _ => Ok(()),
        }
    }

    /// Normalized weights for the definite state at a checkpoint.
    fn weights(&self, state: &StateVector) -> Vec<f64> {
        match self {
            CollapseRule::Born => {
                let p = state.probabilities();
                let total: f64 = p.iter().sum();
                p.into_iter().map(|x| x / total).collect()
            }
            CollapseRule::Supplied(w) => {
                let total: f64 = w.iter().sum();
                w.iter().map(|x| x / total).collect()
            }
        }
    }

    fn pick<R: RngCore + ?Sized>(&self, state: &StateVector, rng: &mut R) -> BasisIndex {
        match self {
            CollapseRule::Born => state.sample(rng),
            CollapseRule::Supplied(w) => BasisIndex(rng::pick_index(w, rng)),
        }
    }
}

/// Outcome of one sampled run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    /// Basis state chosen at each checkpoint, in stage order. Always empty
    /// under the unitary model.
    pub collapsed_at: Vec<(String, BasisIndex)>,
    pub outcome: BasisIndex,
}

/// Execution semantics plus the knobs that go with them.
#[derive(Clone, Debug, PartialEq)]
pub struct Engine {
    pub model: InterpretationModel,
    pub rule: CollapseRule,
    pub branch_limit: u64,
}

impl Engine {
    pub fn new(model: InterpretationModel) -> Self {
        Engine {
            model,
            rule: CollapseRule::Born,
            branch_limit: DEFAULT_BRANCH_LIMIT,
        }
    }

    pub fn with_rule(mut self, rule: CollapseRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_branch_limit(mut self, limit: u64) -> Self {
        self.branch_limit = limit;
        self
    }

    fn collapses(&self) -> bool {
        self.model == InterpretationModel::Collapse
    }

    /// Runs the circuit once and samples its final measurement.
    pub fn run_trial<R: RngCore + ?Sized>(
        &self,
        circuit: &Circuit,
        rng: &mut R,
    ) -> Result<TrialRecord> {
        if !circuit.has_measure() {
            return Err(Error::MissingMeasure);
        }
        self.rule.check(1 << circuit.qubits)?;
        let mut state = circuit.initial_state();
        let mut collapsed_at = Vec::new();
        for stage in &circuit.stages {
            match stage {
                Stage::Checkpoint(label) if self.collapses() => {
                    let chosen = self.rule.pick(&state, rng);
                    state = StateVector::basis(circuit.qubits, chosen.0)?;
                    collapsed_at.push((label.clone(), chosen));
                }
                Stage::Measure => {
                    return Ok(TrialRecord {
                        collapsed_at,
                        outcome: state.sample(rng),
                    });
                }
                other => apply_gate(&mut state, other),
            }
        }
        unreachable!("has_measure checked above")
    }

    /// Trial `trial_index` of the ensemble seeded with `master_seed`.
    pub fn run_seeded_trial(
        &self,
        circuit: &Circuit,
        master_seed: u64,
        trial_index: u64,
    ) -> Result<TrialRecord> {
        self.run_trial(circuit, &mut trial_rng(master_seed, trial_index))
    }

    /// Counts for trials `range` of the ensemble seeded with `master_seed`.
    /// Splitting `0..n` into disjoint ranges and merging the results gives
    /// the same counts as one call over `0..n`.
    pub fn run_trial_range(
        &self,
        circuit: &Circuit,
        master_seed: u64,
        range: core::ops::Range<u64>,
    ) -> Result<MeasurementDistribution> {
        let mut dist = MeasurementDistribution::new(circuit.qubits)?;
        for i in range {
            dist.record(self.run_seeded_trial(circuit, master_seed, i)?.outcome);
        }
        Ok(dist)
    }

    pub fn run_ensemble(
        &self,
        circuit: &Circuit,
        trials: u64,
        master_seed: u64,
    ) -> Result<MeasurementDistribution> {
        if trials == 0 {
            return Err(Error::EmptyEnsemble);
        }
        self.run_trial_range(circuit, master_seed, 0..trials)
    }

    /// The state at the end of the circuit with every checkpoint treated as
    /// the identity.
    pub fn propagate(circuit: &Circuit) -> StateVector {
        let mut state = circuit.initial_state();
        for stage in &circuit.stages {
            apply_gate(&mut state, stage);
        }
        state
    }

    /// Exact outcome probabilities.
    ///
    /// Under collapse semantics every checkpoint splits each live branch into
    /// one branch per basis state of non-zero weight. After the split all
    /// branches are basis states, so branches landing on the same state are
    /// merged before continuing.
    pub fn run_exact(&self, circuit: &Circuit) -> Result<Vec<f64>> {
        if !self.collapses() {
            return Ok(Self::propagate(circuit).probabilities());
        }
        let dim = 1usize << circuit.qubits;
        self.rule.check(dim)?;
        let mut branches: Vec<(f64, StateVector)> = vec![(1.0, circuit.initial_state())];
        for stage in &circuit.stages {
            match stage {
                Stage::Checkpoint(_) => {
                    let split: Vec<(f64, Vec<f64>)> = branches
                        .iter()
                        .map(|(w, s)| (*w, self.rule.weights(s)))
                        .collect();
                    let needed: u64 = split
                        .iter()
                        .map(|(_, p)| p.iter().filter(|x| **x > 0.0).count() as u64)
                        .sum();
                    if needed > self.branch_limit {
                        return Err(Error::BranchLimitExceeded {
                            needed,
                            limit: self.branch_limit,
                        });
                    }
                    let mut merged = vec![0.0; dim];
                    for (w, p) in &split {
                        for (m, x) in merged.iter_mut().zip(p) {
                            *m += w * x;
                        }
                    }
                    branches = merged
                        .into_iter()
                        .enumerate()
                        .filter(|(_, w)| *w > 0.0)
                        .map(|(i, w)| Ok((w, StateVector::basis(circuit.qubits, i)?)))
                        .collect::<Result<_>>()?;
                }
                other => {
                    for (_, s) in &mut branches {
                        apply_gate(s, other);
                    }
                }
            }
        }
        let mut out = vec![0.0; dim];
        for (w, s) in &branches {
            for (o, p) in out.iter_mut().zip(s.probabilities()) {
                *o += w * p;
            }
        }
        Ok(out)
    }
}

pub fn run_trial<R: RngCore + ?Sized>(
    circuit: &Circuit,
    model: InterpretationModel,
    rng: &mut R,
) -> Result<TrialRecord> {
    Engine::new(model).run_trial(circuit, rng)
}

pub fn run_exact(circuit: &Circuit, model: InterpretationModel) -> Result<Vec<f64>> {
    Engine::new(model).run_exact(circuit)
}

pub fn run_ensemble(
    circuit: &Circuit,
    model: InterpretationModel,
    trials: u64,
    master_seed: u64,
) -> Result<MeasurementDistribution> {
    Engine::new(model).run_ensemble(circuit, trials, master_seed)
}

/// The three reference pipelines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Two-qubit search for `|11>`: H, flip `|11>`, then H / flip `|00>` / H.
    Figure1,
    /// Figure 1 with a `merge` checkpoint after the first phase flip, where
    /// the two paths of each qubit are recombined additively.
    Figure2,
    /// One qubit: H, a `stage3` checkpoint, H.
    Figure3,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Figure1, Builtin::Figure2, Builtin::Figure3];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Figure1 => "figure1",
            Builtin::Figure2 => "figure2",
            Builtin::Figure3 => "figure3",
        }
    }

    pub fn circuit(self) -> Circuit {
        use HadamardTarget::{All, Qubit};
        let stages = match self {
            Builtin::Figure1 | Builtin::Figure2 => {
                let mut stages = vec![
                    Stage::Hadamard(All),
                    Stage::PhaseShift(PhaseShiftSpec::flip(BasisIndex(0b11))),
                ];
                if self == Builtin::Figure2 {
                    stages.push(Stage::Checkpoint("merge".to_string()));
                }
                stages.extend([
                    Stage::Hadamard(All),
                    Stage::PhaseShift(PhaseShiftSpec::flip(BasisIndex(0b00))),
                    Stage::Hadamard(All),
                    Stage::Measure,
                ]);
                return Circuit::new(2, stages).expect("builtin circuit is valid");
            }
            Builtin::Figure3 => vec![
                Stage::Hadamard(Qubit(0)),
                Stage::Checkpoint("stage3".to_string()),
                Stage::Hadamard(Qubit(0)),
                Stage::Measure,
            ],
        };
        Circuit::new(1, stages).expect("builtin circuit is valid")
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

pub fn builtin_circuit(name: &str) -> Result<Circuit> {
    Ok(name.parse::<Builtin>()?.circuit())
}
