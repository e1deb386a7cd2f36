use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("qubit count {0} is outside 1..={max}", max = crate::MAX_QUBITS)]
    InvalidQubitCount(u32),
    #[error("basis index {index} out of range for {qubits} qubit(s)")]
    BasisIndexOutOfRange { index: usize, qubits: u32 },
    #[error("qubit {qubit} out of range for {qubits} qubit(s)")]
    QubitOutOfRange { qubit: u32, qubits: u32 },
    #[error("amplitude count {0} is not 2^q for any supported q")]
    BadDimension(usize),
    #[error("state is not normalized (sum of |a|^2 = {0})")]
    NotNormalized(f64),
    #[error("qubit counts differ: {left} vs {right}")]
    QubitCountMismatch { left: u32, right: u32 },
    #[error("outcome spaces differ: {left} vs {right} outcomes")]
    OutcomeSpaceMismatch { left: usize, right: usize },
    #[error("bitstring `{0}` must consist of `0` and `1` only")]
    InvalidBitstring(String),
    #[error("bitstring length {len} does not match qubit count {qubits}")]
    BitstringLength { len: usize, qubits: u32 },
    #[error("phase angle must be finite")]
    NonFiniteAngle,
    #[error("invalid weights: {0}")]
    InvalidWeights(&'static str),
    #[error("checkpoint label `{0}` is not an identifier")]
    InvalidLabel(String),
    #[error("measure must be the final stage (found at stage {0})")]
    MeasureNotFinal(usize),
    #[error("circuit has no measure stage; use exact evaluation instead")]
    MissingMeasure,
    #[error("collapse enumeration needs {needed} branches, limit is {limit}; use a Monte Carlo ensemble")]
    BranchLimitExceeded { needed: u64, limit: u64 },
    #[error("an ensemble needs at least one trial")]
    EmptyEnsemble,
    #[error("unknown builtin circuit `{0}` (expected figure1, figure2 or figure3)")]
    UnknownBuiltin(String),
}
