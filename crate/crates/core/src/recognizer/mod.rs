//! One-pass recognizers for the repeated-disjointness language.
//!
//! The quantum recognizer runs three consumers over one shared cursor:
//! a deterministic format check, a fingerprint consistency check at a random
//! point t, and the streaming quantum search at a random iteration count j.
//! The combining rule: a format failure rejects; a consistency failure
//! rejects; otherwise accept exactly when the search outputs 1.
//!
//! Members are accepted with probability 1. Non-members are rejected with
//! probability at least 1/4: inconsistent words are caught by the
//! fingerprints except on a vanishing fraction of points, and consistent
//! non-members make the search measure 1 often enough.

mod fingerprint;
mod grover;
mod instance;
mod scanner;

pub use fingerprint::{
    check_consistency, find_prime, validate_point, ConsistencyChecker, FingerprintAccumulator,
    MAX_PRIME_K,
};
pub use grover::{
    bbht_output_zero_probability, exact_output_zero_probability, output_zero_probability_at,
    per_iteration_one_probability, sample_search_output, search_output_one_probability,
    GroverProcedure, MAX_EXACT_K,
};
pub use instance::{DisjInstance, MAX_INSTANCE_K};
pub use scanner::{check_format, BlockKind, FormatScanner, ScanEvent, ScanStep};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::stream::{SpaceMeter, TokenStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

/// Which consumer settled the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    /// The structural check: only ever rejects.
    Format,
    /// The fingerprint consistency check: only ever rejects.
    Consistency,
    /// The final decision procedure (quantum search, or block matching in
    /// the classical baseline).
    Decision,
}

impl std::fmt::Display for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Channel::Format => "format",
            Channel::Consistency => "consistency",
            Channel::Decision => "decision",
        })
    }
}

/// A decision together with the channel that produced it. The verdict is
/// stated for language membership; the complement polarity is derived, not
/// recomputed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    pub channel: Channel,
}

impl Verdict {
    pub fn accept() -> Self {
        Verdict {
            decision: Decision::Accept,
            channel: Channel::Decision,
        }
    }

    pub fn reject(channel: Channel) -> Self {
        Verdict {
            decision: Decision::Reject,
            channel,
        }
    }

    pub fn accepts(&self) -> bool {
        self.decision == Decision::Accept
    }

    /// The same run read as a recognizer of the complement language.
    pub fn accepts_complement(&self) -> bool {
        !self.accepts()
    }
}

/// Outcome of one quantum recognizer run, with the randomness that drove it
/// and the space accounting split into the shared streaming front end
/// (format counters plus fingerprint state) and the decision procedure's own
/// storage. The decision meter is the one that carries qubits.
#[derive(Clone, Debug)]
pub struct QuantumRunOutcome {
    pub verdict: Verdict,
    pub k: Option<u32>,
    pub prime: Option<u64>,
    pub point: Option<u64>,
    pub iterations: Option<u64>,
    pub frontend: SpaceMeter,
    pub decision: SpaceMeter,
}

/// Single-pass recognition with seeded randomness. Draws, in order: the
/// fingerprint point t, the iteration count j, and finally the measurement
/// outcome.
pub fn recognize_ldisj(stream: &mut TokenStream, seed: u64) -> Result<QuantumRunOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    recognize_ldisj_with_rng(stream, &mut rng)
}

pub fn recognize_ldisj_with_rng(
    stream: &mut TokenStream,
    rng: &mut impl Rng,
) -> Result<QuantumRunOutcome> {
    let mut scanner = FormatScanner::new();
    let mut consistency: Option<ConsistencyChecker> = None;
    let mut search: Option<GroverProcedure> = None;
    let input_length = stream.len() as u64;
    let mut outcome = QuantumRunOutcome {
        verdict: Verdict::reject(Channel::Format),
        k: None,
        prime: None,
        point: None,
        iterations: None,
        frontend: SpaceMeter::new(input_length),
        decision: SpaceMeter::new(input_length),
    };

    while let Some(tok) = stream.next_token() {
        match scanner.feed(tok) {
            ScanStep::Rejected => {
                // halt: the verdict is settled whatever follows
                return Ok(outcome);
            }
            ScanStep::Event(ScanEvent::HeaderDone { k }) => {
                if k > MAX_PRIME_K {
                    return Err(Error::KOutOfRange {
                        k,
                        cap: MAX_PRIME_K,
                    });
                }
                let p = find_prime(k)?;
                let t = rng.gen_range(0..p);
                let j = rng.gen_range(0..(1u64 << k));
                consistency = Some(ConsistencyChecker::new(k, p, t)?);
                search = Some(GroverProcedure::new(k, j)?);
                outcome.k = Some(k);
                outcome.prime = Some(p);
                outcome.point = Some(t);
                outcome.iterations = Some(j);
                let run = search.as_ref().unwrap();
                outcome.decision.charge_qubits(run.qubits());
                outcome.decision.charge_cells(run.classical_cells());
            }
            ScanStep::Event(ScanEvent::BlockBit {
                repetition,
                kind,
                position,
                bit,
            }) => {
                consistency.as_mut().unwrap().feed_bit(bit);
                search
                    .as_mut()
                    .unwrap()
                    .feed_bit(repetition, kind, position, bit);
            }
            ScanStep::Event(ScanEvent::BlockEnd { repetition, kind }) => {
                consistency.as_mut().unwrap().end_block(kind);
                search.as_mut().unwrap().end_block(repetition, kind);
            }
            ScanStep::Continue => {}
        }
        let live = scanner.cells() + consistency.as_ref().map_or(0, |c| c.cells());
        outcome.frontend.charge_cells(live);
    }

    if scanner.finish().is_none() {
        return Ok(outcome);
    }
    let consistency = consistency.expect("well-formed words have a header");
    let search = search.expect("well-formed words have a header");
    if !consistency.passes() {
        outcome.verdict = Verdict::reject(Channel::Consistency);
        return Ok(outcome);
    }
    let b = rng.gen::<f64>() < search.result_one_probability();
    outcome.verdict = if b {
        Verdict::reject(Channel::Decision)
    } else {
        Verdict::accept()
    };
    Ok(outcome)
}
