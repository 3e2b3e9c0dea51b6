//! Exact simulation and test harness for one-pass recognizers of a
//! repeated set-disjointness language.
//!
//! The language contains the words `1^k # (x#y#x#)^{2^k}` where x and y are
//! binary strings of length 2^{2k} with disjoint support, i.e. no index
//! carries a 1 in both. Everything here consumes the input strictly left to
//! right, once:
//!
//! - [`stream`]: the one-pass token stream, space meters and the
//!   configuration-count bound for space-bounded machines;
//! - [`qcore`]: a dense state-vector register, the `a#b#c#...` gate-tape
//!   format with its executor, and the structured search register streamed
//!   over input blocks;
//! - [`recognizer`]: the quantum recognizer: format check, fingerprint
//!   consistency check and the streaming quantum search, combined over one
//!   shared cursor; members are accepted with certainty, non-members are
//!   rejected with probability at least 1/4;
//! - [`classical`]: the brute-force disjointness oracle, the blockwise
//!   baseline recognizer (exact, but its buffer doubles with k), and exact
//!   acceptance probabilities by enumerating all randomness;
//! - [`harness`]: seeded instance generation, trial running and CSV/JSON
//!   reports.

pub mod bits;
pub mod classical;
pub mod error;
pub mod harness;
pub mod qcore;
pub mod recognizer;
pub mod stream;

pub use bits::BitString;
pub use classical::{
    blockwise_recognize, disj_oracle, exact_verdict_distribution, exact_word_distribution,
    BlockwiseRunOutcome, DisjOracleResult, ExactDistribution, RecognizerKind,
};
pub use error::{Error, Result};
pub use harness::{generate_instance, run_trials, InstanceKind, ReportRow, SpaceRow, SweepRow};
pub use qcore::{
    GateId, GateInstruction, GateTape, QuantumRegister, SearchRegister, MAX_QUBITS, NORM_TOLERANCE,
};
pub use recognizer::{
    check_format, find_prime, recognize_ldisj, Channel, Decision, DisjInstance, QuantumRunOutcome,
    Verdict,
};
pub use stream::{config_count_bound, ConfigBoundParams, SpaceMeter, Token, TokenStream};
