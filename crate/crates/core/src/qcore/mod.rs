//! Exact state-vector machinery: a dense register, the textual gate-tape
//! executor, and the structured search register streamed over input blocks.

mod register;
mod search;
mod tape;

pub use register::{QuantumRegister, MAX_QUBITS, NORM_TOLERANCE};
pub use search::{SearchRegister, MAX_SEARCH_K};
pub use tape::{GateId, GateInstruction, GateTape};
