//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a {requested}-qubit register exceeds the {cap}-qubit cap")]
    RegisterTooLarge { requested: usize, cap: usize },

    #[error("qubit {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("control and target of a CNOT must differ (got qubit {qubit} twice)")]
    CnotSameQubit { qubit: usize },

    #[error("amplitude vector of length {len} is not a nonempty power of two")]
    BadAmplitudeCount { len: usize },

    #[error("amplitude vector has L2 norm {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("expected a register of {expected} qubits, found {found}")]
    RegisterShape { expected: usize, found: usize },

    #[error("bit string of length {found} where {expected} bits are required")]
    BitLength { expected: u64, found: u64 },

    #[error("bit strings differ in length: {left} vs {right}")]
    UnequalBitLengths { left: usize, right: usize },

    #[error("invalid character {found:?}; expected '0' or '1'")]
    InvalidBitChar { found: char },

    #[error("invalid character {found:?}; input words use only '0', '1' and '#'")]
    InvalidWordChar { found: char },

    #[error("gate id {found} is not one of 0 (H), 1 (T) or 2 (CNOT)")]
    InvalidGateId { found: u64 },

    #[error("tape index {index} is not below the declared space {space}")]
    TapeIndexOutOfRange { index: usize, space: usize },

    #[error("{len} instructions exceed the 2^{space} step budget of the declared space")]
    TapeTooLong { len: usize, space: usize },

    #[error("malformed gate tape: {reason}")]
    TapeSyntax { reason: String },

    #[error("k = {k} is outside the supported range [1, {cap}]")]
    KOutOfRange { k: u32, cap: u32 },

    #[error("{p} is not a prime strictly between 2^{lo} and 2^{hi}")]
    PrimeOutOfRange { p: u64, lo: u32, hi: u32 },

    #[error("evaluation point {t} is not in [0, {p})")]
    PointOutOfRange { t: u64, p: u64 },

    #[error("iteration count {j} is not in [0, {bound})")]
    IterationOutOfRange { j: u64, bound: u64 },

    #[error("the run was addressed as k = {expected} but the word declares k = {found}")]
    WordKMismatch { expected: u32, found: u32 },

    #[error("input violates the declared block structure before the word ends")]
    MalformedWord,

    #[error("cannot place {t} collisions across {len} indices")]
    TooManyCollisions { t: u64, len: u64 },

    #[error("configuration-bound parameter {name} must be positive")]
    ZeroConfigParam { name: &'static str },

    #[error("exact enumeration supports k \u{2264} {cap}, got k = {k}")]
    ExactScaleCap { k: u32, cap: u32 },
}

impl Error {
    /// True for capacity and scale errors; the CLI reports these with a
    /// distinct exit status.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::RegisterTooLarge { .. }
                | Error::TapeTooLong { .. }
                | Error::KOutOfRange { .. }
                | Error::ExactScaleCap { .. }
        )
    }
}
