//! Classical ground truth and the blockwise baseline recognizer.
//!
//! `disj_oracle` is the brute-force reference for disjointness. The
//! blockwise recognizer shares the streaming front end (format check and
//! fingerprint consistency) with the quantum recognizer, but decides
//! membership by buffering one 2^k-bit slice of x per repetition and
//! matching it against the corresponding slice of y. This is exact, at the price of
//! a buffer that doubles with every increment of k.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::recognizer::{
    check_consistency, find_prime, search_output_one_probability, BlockKind, Channel,
    ConsistencyChecker, FormatScanner, ScanEvent, ScanStep, Verdict, MAX_EXACT_K,
};
use crate::stream::{SpaceMeter, TokenStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DisjOracleResult {
    /// 1 iff no index carries a 1 in both strings.
    pub disjoint: bool,
    /// Number of colliding indices.
    pub collisions: u64,
}

/// Exact disjointness by full scan.
pub fn disj_oracle(x: &BitString, y: &BitString) -> Result<DisjOracleResult> {
    if x.len() != y.len() {
        return Err(Error::UnequalBitLengths {
            left: x.len(),
            right: y.len(),
        });
    }
    let collisions = x.iter().zip(y.iter()).filter(|&(a, b)| a && b).count() as u64;
    Ok(DisjOracleResult {
        disjoint: collisions == 0,
        collisions,
    })
}

/// Which recognizer an experiment runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecognizerKind {
    Quantum,
    Blockwise,
}

impl std::fmt::Display for RecognizerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RecognizerKind::Quantum => "quantum",
            RecognizerKind::Blockwise => "blockwise",
        })
    }
}

/// Streaming block matcher: during repetition i it buffers the i-th 2^k-bit
/// slice of the leading x copy and compares the matching slice of y bit by
/// bit. Over the 2^k repetitions every index is covered exactly once.
#[derive(Clone, Debug)]
pub struct BlockMatcher {
    slice_len: u64,
    buffer: Vec<bool>,
    buffer_cells_peak: u64,
    collision: bool,
}

impl BlockMatcher {
    pub fn new(k: u32) -> Self {
        BlockMatcher {
            slice_len: 1u64 << k,
            buffer: Vec::with_capacity(1usize << k),
            buffer_cells_peak: 0,
            collision: false,
        }
    }

    fn window(&self, repetition: u32) -> (u64, u64) {
        let lo = (u64::from(repetition) - 1) * self.slice_len;
        (lo, lo + self.slice_len)
    }

    pub fn feed_bit(&mut self, repetition: u32, kind: BlockKind, position: u64, bit: bool) {
        let (lo, hi) = self.window(repetition);
        if position < lo || position >= hi {
            return;
        }
        match kind {
            BlockKind::X => {
                self.buffer.push(bit);
                self.buffer_cells_peak = self.buffer_cells_peak.max(self.buffer.len() as u64);
            }
            BlockKind::Y => {
                let idx = (position - lo) as usize;
                if self.buffer[idx] && bit {
                    self.collision = true;
                }
            }
            BlockKind::Z => {}
        }
    }

    pub fn end_block(&mut self, kind: BlockKind) {
        if kind == BlockKind::Y {
            self.buffer.clear();
        }
    }

    pub fn collision_found(&self) -> bool {
        self.collision
    }

    /// Peak buffered bits, one ternary cell each. The collision flag lives
    /// in control state and is not charged.
    pub fn buffer_cells_peak(&self) -> u64 {
        self.buffer_cells_peak
    }
}

/// Outcome of one blockwise run, with the same space split as the quantum
/// recognizer: shared front end versus the decision procedure's own storage
/// (here the block buffer, which never uses qubits).
#[derive(Clone, Debug)]
pub struct BlockwiseRunOutcome {
    pub verdict: Verdict,
    pub k: Option<u32>,
    pub prime: Option<u64>,
    pub point: Option<u64>,
    pub frontend: SpaceMeter,
    pub decision: SpaceMeter,
}

pub fn blockwise_recognize(stream: &mut TokenStream, seed: u64) -> Result<BlockwiseRunOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    blockwise_recognize_with_rng(stream, &mut rng)
}

pub fn blockwise_recognize_with_rng(
    stream: &mut TokenStream,
    rng: &mut impl Rng,
) -> Result<BlockwiseRunOutcome> {
    let mut scanner = FormatScanner::new();
    let mut consistency: Option<ConsistencyChecker> = None;
    let mut matcher: Option<BlockMatcher> = None;
    let input_length = stream.len() as u64;
    let mut outcome = BlockwiseRunOutcome {
        verdict: Verdict::reject(Channel::Format),
        k: None,
        prime: None,
        point: None,
        frontend: SpaceMeter::new(input_length),
        decision: SpaceMeter::new(input_length),
    };

    while let Some(tok) = stream.next_token() {
        match scanner.feed(tok) {
            ScanStep::Rejected => return Ok(outcome),
            ScanStep::Event(ScanEvent::HeaderDone { k }) => {
                let p = find_prime(k)?;
                let t = rng.gen_range(0..p);
                consistency = Some(ConsistencyChecker::new(k, p, t)?);
                matcher = Some(BlockMatcher::new(k));
                outcome.k = Some(k);
                outcome.prime = Some(p);
                outcome.point = Some(t);
            }
            ScanStep::Event(ScanEvent::BlockBit {
                repetition,
                kind,
                position,
                bit,
            }) => {
                consistency.as_mut().unwrap().feed_bit(bit);
                matcher
                    .as_mut()
                    .unwrap()
                    .feed_bit(repetition, kind, position, bit);
            }
            ScanStep::Event(ScanEvent::BlockEnd { kind, .. }) => {
                consistency.as_mut().unwrap().end_block(kind);
                matcher.as_mut().unwrap().end_block(kind);
            }
            ScanStep::Continue => {}
        }
        let live = scanner.cells() + consistency.as_ref().map_or(0, |c| c.cells());
        outcome.frontend.charge_cells(live);
        outcome
            .decision
            .charge_cells(matcher.as_ref().map_or(0, |m| m.buffer_cells_peak()));
    }

    if scanner.finish().is_none() {
        return Ok(outcome);
    }
    let consistency = consistency.expect("well-formed words have a header");
    let matcher = matcher.expect("well-formed words have a header");
    if !consistency.passes() {
        outcome.verdict = Verdict::reject(Channel::Consistency);
        return Ok(outcome);
    }
    outcome.verdict = if matcher.collision_found() {
        Verdict::reject(Channel::Decision)
    } else {
        Verdict::accept()
    };
    Ok(outcome)
}

/// Acceptance probability computed by enumerating the recognizer's
/// randomness. `exhaustive` is true when every fingerprint point was
/// visited; at k = 3 the points are sampled instead (the iteration counts
/// are always enumerated in full).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactDistribution {
    pub acceptance: f64,
    pub points: u64,
    pub exhaustive: bool,
}

impl ExactDistribution {
    pub fn rejection(&self) -> f64 {
        1.0 - self.acceptance
    }
}

const SAMPLED_POINTS: u64 = 128;
const SAMPLE_SEED: u64 = 0x1d15;

struct StructureFacts {
    k: u32,
    collision: bool,
}

fn structure_facts(word: &str) -> Result<Option<StructureFacts>> {
    let mut stream = TokenStream::from_word(word)?;
    let mut scanner = FormatScanner::new();
    let mut matcher: Option<BlockMatcher> = None;
    while let Some(tok) = stream.next_token() {
        match scanner.feed(tok) {
            ScanStep::Rejected => return Ok(None),
            ScanStep::Event(ScanEvent::HeaderDone { k }) => matcher = Some(BlockMatcher::new(k)),
            ScanStep::Event(ScanEvent::BlockBit {
                repetition,
                kind,
                position,
                bit,
            }) => matcher
                .as_mut()
                .unwrap()
                .feed_bit(repetition, kind, position, bit),
            ScanStep::Event(ScanEvent::BlockEnd { kind, .. }) => {
                matcher.as_mut().unwrap().end_block(kind)
            }
            ScanStep::Continue => {}
        }
    }
    Ok(scanner.finish().map(|k| StructureFacts {
        k,
        collision: matcher.expect("header seen").collision_found(),
    }))
}

/// Exact (or flagged-sampled) acceptance probability of a recognizer on an
/// arbitrary word, averaging over all fingerprint points and, for the
/// quantum recognizer, all iteration counts.
pub fn exact_word_distribution(word: &str, kind: RecognizerKind) -> Result<ExactDistribution> {
    let facts = match structure_facts(word)? {
        Some(f) => f,
        None => {
            // the format check rejects deterministically
            return Ok(ExactDistribution {
                acceptance: 0.0,
                points: 1,
                exhaustive: true,
            });
        }
    };
    let k = facts.k;
    if k > MAX_EXACT_K {
        return Err(Error::ExactScaleCap {
            k,
            cap: MAX_EXACT_K,
        });
    }
    let p = find_prime(k)?;
    let exhaustive = k < 3;

    let consistency_fraction = if exhaustive {
        let passes = (0..p)
            .filter(|&t| {
                let mut stream = TokenStream::from_word(word).expect("validated above");
                check_consistency(&mut stream, k, t, p).expect("point is valid")
            })
            .count() as f64;
        passes / p as f64
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let passes = (0..SAMPLED_POINTS)
            .filter(|_| {
                let t = rng.gen_range(0..p);
                let mut stream = TokenStream::from_word(word).expect("validated above");
                check_consistency(&mut stream, k, t, p).expect("point is valid")
            })
            .count() as f64;
        passes / SAMPLED_POINTS as f64
    };

    let acceptance = match kind {
        RecognizerKind::Quantum => {
            let m = 1u64 << k;
            let mut output_one_total = 0.0;
            for j in 0..m {
                let mut stream = TokenStream::from_word(word).expect("validated above");
                output_one_total += search_output_one_probability(&mut stream, k, j)?;
            }
            consistency_fraction * (output_one_total / m as f64)
        }
        RecognizerKind::Blockwise => {
            if facts.collision {
                0.0
            } else {
                consistency_fraction
            }
        }
    };

    let point_count = if exhaustive { p } else { SAMPLED_POINTS };
    let points = match kind {
        RecognizerKind::Quantum => point_count * (1u64 << k),
        RecognizerKind::Blockwise => point_count,
    };
    Ok(ExactDistribution {
        acceptance,
        points,
        exhaustive,
    })
}

/// [`exact_word_distribution`] over an encoded instance.
pub fn exact_verdict_distribution(
    instance: &crate::recognizer::DisjInstance,
    kind: RecognizerKind,
) -> Result<ExactDistribution> {
    exact_word_distribution(&instance.encode(), kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognizer::DisjInstance;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn oracle_counts_collisions() {
        let r = disj_oracle(&bits("0000"), &bits("0000")).unwrap();
        assert!(r.disjoint && r.collisions == 0);
        let r = disj_oracle(&bits("1010"), &bits("0101")).unwrap();
        assert!(r.disjoint && r.collisions == 0);
        let r = disj_oracle(&bits("1100"), &bits("0100")).unwrap();
        assert!(!r.disjoint && r.collisions == 1);
        assert!(disj_oracle(&bits("10"), &bits("100")).is_err());
    }

    #[test]
    fn blockwise_agrees_with_oracle_on_members_and_nonmembers() {
        for (x, y) in [("1010", "0101"), ("0000", "1111"), ("1100", "0110")] {
            let inst = DisjInstance::from_strs(1, x, y).unwrap();
            let oracle = disj_oracle(inst.x(), inst.y()).unwrap();
            let mut stream = inst.token_stream();
            let out = blockwise_recognize(&mut stream, 3).unwrap();
            assert_eq!(out.verdict.accepts(), oracle.disjoint, "x={x} y={y}");
            assert!(stream.is_exhausted());
        }
    }

    #[test]
    fn blockwise_buffer_peaks_at_slice_length() {
        for k in 1..=3u32 {
            let side = 1usize << (2 * k);
            let inst =
                DisjInstance::new(k, BitString::zeros(side), BitString::zeros(side)).unwrap();
            let mut stream = inst.token_stream();
            let out = blockwise_recognize(&mut stream, 0).unwrap();
            assert_eq!(out.decision.classical_cells_peak(), 1u64 << k);
            assert_eq!(out.decision.qubits_peak(), 0);
            assert!(out.verdict.accepts());
        }
    }

    #[test]
    fn blockwise_rejects_malformed_input_via_format() {
        let mut stream = TokenStream::from_word("1#01#").unwrap();
        let out = blockwise_recognize(&mut stream, 0).unwrap();
        assert_eq!(out.verdict, Verdict::reject(Channel::Format));
    }

    #[test]
    fn member_distributions_are_certain() {
        let inst = DisjInstance::from_strs(1, "1010", "0101").unwrap();
        for kind in [RecognizerKind::Quantum, RecognizerKind::Blockwise] {
            let d = exact_verdict_distribution(&inst, kind).unwrap();
            assert_eq!(d.acceptance, 1.0, "{kind}");
            assert!(d.exhaustive);
        }
    }

    #[test]
    fn quantum_rejection_bound_on_valid_nonmembers() {
        for t in 1..=4u64 {
            let (x, y) = crate::harness::collision_pattern(1, t);
            let inst = DisjInstance::new(1, x, y).unwrap();
            let d = exact_verdict_distribution(&inst, RecognizerKind::Quantum).unwrap();
            assert!(d.rejection() >= 0.25 - 1e-9, "t={t}: {}", d.rejection());
        }
    }

    #[test]
    fn inconsistent_y_block_is_rejected_with_high_probability() {
        let inst = DisjInstance::from_strs(1, "1010", "0101").unwrap();
        let mut word = inst.encode().into_bytes();
        word[2 + 15 + 5] = b'1'; // flip a bit of the second y copy
        let word = String::from_utf8(word).unwrap();
        let d = exact_word_distribution(&word, RecognizerKind::Quantum).unwrap();
        assert!(d.rejection() >= 0.75, "rejection {}", d.rejection());
    }

    #[test]
    fn malformed_words_have_zero_acceptance() {
        let d = exact_word_distribution("1#01#", RecognizerKind::Quantum).unwrap();
        assert_eq!(d.acceptance, 0.0);
        assert!(d.exhaustive);
    }

    #[test]
    fn scale_cap_on_exact_enumeration() {
        let side = 1usize << 8;
        let inst = DisjInstance::new(4, BitString::zeros(side), BitString::zeros(side)).unwrap();
        assert!(matches!(
            exact_verdict_distribution(&inst, RecognizerKind::Quantum),
            Err(Error::ExactScaleCap { k: 4, cap: 3 })
        ));
    }
}
