//! The streaming quantum search over a well-formed word.
//!
//! A run draws an iteration count j uniformly from [0, 2^k - 1], then in a
//! single pass over the word:
//!
//! 1. prepares the uniform index superposition;
//! 2. for the first j repetitions applies, bit by bit as the blocks stream
//!    in, mark_xor(x), marked_phase_flip(y), mark_xor(z), then one diffusion
//!    layer; together these form one amplitude-amplification iteration whose sign
//!    oracle marks indices where both strings carry a 1;
//! 3. in repetition j + 1 applies mark_xor(x) then result_xor_marked(y),
//!    writing x_i AND y_i into the result qubit;
//! 4. reads and discards the remaining blocks (the pass must finish), then
//!    measures the result qubit and outputs 1 minus the outcome.
//!
//! On collision-free inputs the result qubit stays exactly zero, so the run
//! outputs 1 with certainty. With t colliding indices out of N = 2^{2k} and
//! sin^2(theta) = t/N, the probability of measuring 1 after j iterations is
//! sin^2((2j+1) theta), and averaging over the random j gives
//! 1/2 - sin(4m theta) / (4m sin(2 theta)) with m = 2^k, the standard
//! analysis of search with an unknown number of solutions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::qcore::SearchRegister;
use crate::recognizer::instance::DisjInstance;
use crate::recognizer::scanner::{BlockKind, FormatScanner, ScanEvent, ScanStep};
use crate::stream::{ternary_cells, TokenStream};

/// Exact enumeration over the full word is kept to desk scale.
pub const MAX_EXACT_K: u32 = 3;

/// Single streaming run at a fixed iteration count.
#[derive(Clone, Debug)]
pub struct GroverProcedure {
    register: SearchRegister,
    k: u32,
    iterations: u64,
}

impl GroverProcedure {
    pub fn new(k: u32, iterations: u64) -> Result<Self> {
        let bound = 1u64 << k; // SearchRegister::new validates k itself
        let mut register = SearchRegister::new(k)?;
        if iterations >= bound {
            return Err(Error::IterationOutOfRange {
                j: iterations,
                bound,
            });
        }
        register.hadamard_index();
        Ok(GroverProcedure {
            register,
            k,
            iterations,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn feed_bit(&mut self, repetition: u32, kind: BlockKind, position: u64, bit: bool) {
        let rep = u64::from(repetition);
        if rep <= self.iterations {
            match kind {
                BlockKind::X | BlockKind::Z => self.register.mark_xor_bit(position, bit),
                BlockKind::Y => self.register.marked_phase_flip_bit(position, bit),
            }
        } else if rep == self.iterations + 1 {
            match kind {
                BlockKind::X => self.register.mark_xor_bit(position, bit),
                BlockKind::Y => self.register.result_xor_marked_bit(position, bit),
                BlockKind::Z => {} // read and discarded
            }
        }
        // repetitions beyond j + 1 are consumed without touching the register
    }

    pub fn end_block(&mut self, repetition: u32, kind: BlockKind) {
        if u64::from(repetition) <= self.iterations && kind == BlockKind::Z {
            self.register.diffuse();
        }
    }

    /// Exact probability that the final measurement yields 1 (so that the
    /// procedure outputs 0).
    pub fn result_one_probability(&self) -> f64 {
        self.register.result_one_probability()
    }

    pub fn register(&self) -> &SearchRegister {
        &self.register
    }

    /// Classical bookkeeping beyond the shared scanner: the stored j.
    pub fn classical_cells(&self) -> u64 {
        ternary_cells((1u64 << self.k) - 1)
    }

    pub fn qubits(&self) -> u32 {
        2 * self.k + 2
    }
}

fn drive(stream: &mut TokenStream, k: u32, iterations: u64) -> Result<GroverProcedure> {
    let mut scanner = FormatScanner::new();
    let mut run = GroverProcedure::new(k, iterations)?;
    while let Some(tok) = stream.next_token() {
        match scanner.feed(tok) {
            ScanStep::Rejected => return Err(Error::MalformedWord),
            ScanStep::Event(ScanEvent::HeaderDone { k: word_k }) => {
                if word_k != k {
                    return Err(Error::WordKMismatch {
                        expected: k,
                        found: word_k,
                    });
                }
            }
            ScanStep::Event(ScanEvent::BlockBit {
                repetition,
                kind,
                position,
                bit,
            }) => run.feed_bit(repetition, kind, position, bit),
            ScanStep::Event(ScanEvent::BlockEnd { repetition, kind }) => {
                run.end_block(repetition, kind)
            }
            ScanStep::Continue => {}
        }
    }
    if scanner.finish().is_none() {
        return Err(Error::MalformedWord);
    }
    Ok(run)
}

/// Exact probability that a run with iteration count j outputs 1, i.e. one
/// minus the probability of measuring 1.
pub fn search_output_one_probability(stream: &mut TokenStream, k: u32, j: u64) -> Result<f64> {
    let run = drive(stream, k, j)?;
    Ok(1.0 - run.result_one_probability())
}

/// One sampled run: measures the result qubit and returns 1 - b.
pub fn sample_search_output(
    stream: &mut TokenStream,
    k: u32,
    j: u64,
    rng: &mut impl Rng,
) -> Result<u8> {
    let run = drive(stream, k, j)?;
    let b = rng.gen::<f64>() < run.result_one_probability();
    Ok(1 - u8::from(b))
}

/// Probability 1 - b for a fixed j on an encoded instance.
pub fn output_zero_probability_at(instance: &DisjInstance, j: u64) -> Result<f64> {
    let mut stream = instance.token_stream();
    let run = drive(&mut stream, instance.k(), j)?;
    Ok(run.result_one_probability())
}

/// Exact probability that the procedure outputs 0 on this instance,
/// averaged over the uniformly random iteration count.
pub fn exact_output_zero_probability(instance: &DisjInstance) -> Result<f64> {
    if instance.k() > MAX_EXACT_K {
        return Err(Error::ExactScaleCap {
            k: instance.k(),
            cap: MAX_EXACT_K,
        });
    }
    let m = 1u64 << instance.k();
    let mut total = 0.0;
    for j in 0..m {
        total += output_zero_probability_at(instance, j)?;
    }
    Ok(total / m as f64)
}

/// Closed-form prediction for the output-0 probability with t collisions
/// out of 2^{2k} indices: 1/2 - sin(4m theta)/(4m sin(2 theta)) where
/// sin^2(theta) = t/2^{2k} and m = 2^k. The boundary cases are 0 at t = 0
/// and 1 when every index collides.
pub fn bbht_output_zero_probability(k: u32, t: u64) -> f64 {
    let n = 1u64 << (2 * k);
    if t == 0 {
        return 0.0;
    }
    if t >= n {
        return 1.0;
    }
    let m = (1u64 << k) as f64;
    let theta = ((t as f64) / (n as f64)).sqrt().asin();
    0.5 - (4.0 * m * theta).sin() / (4.0 * m * (2.0 * theta).sin())
}

/// Closed-form per-iteration law: probability of measuring 1 after j
/// iterations, sin^2((2j+1) theta).
pub fn per_iteration_one_probability(k: u32, t: u64, j: u64) -> f64 {
    let n = 1u64 << (2 * k);
    let theta = ((t as f64) / (n as f64)).sqrt().asin();
    ((2 * j + 1) as f64 * theta).sin().powi(2)
}
