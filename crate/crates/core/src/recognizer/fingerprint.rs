//! Polynomial fingerprints over a prime field, used to check block
//! consistency in one pass.
//!
//! A block w_0..w_{L-1} is summarized by F_w(t) = sum_i w_i t^i mod p at a
//! random point t. Equal blocks always agree; distinct blocks agree on at
//! most L-1 points, so with p > L^2 a single comparison passes falsely with
//! probability below 1/L.

use crate::error::{Error, Result};
use crate::recognizer::scanner::{BlockKind, FormatScanner, ScanEvent, ScanStep};
use crate::stream::{ternary_cells, TokenStream};

/// Cap on k for prime search: the primes stay below 2^29, so all modular
/// products fit in u64.
pub const MAX_PRIME_K: u32 = 7;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly between 2^{4k} and 2^{4k+1}, by trial division.
pub fn find_prime(k: u32) -> Result<u64> {
    if k == 0 || k > MAX_PRIME_K {
        return Err(Error::KOutOfRange {
            k,
            cap: MAX_PRIME_K,
        });
    }
    let lo = 1u64 << (4 * k);
    let hi = lo << 1;
    let p = ((lo + 1)..hi)
        .find(|&n| is_prime(n))
        .expect("a prime exists strictly between consecutive powers of two");
    Ok(p)
}

/// Checks that (p, t) is a valid fingerprint point for parameter k.
pub fn validate_point(k: u32, p: u64, t: u64) -> Result<()> {
    if k == 0 || k > MAX_PRIME_K {
        return Err(Error::KOutOfRange {
            k,
            cap: MAX_PRIME_K,
        });
    }
    let lo = 1u64 << (4 * k);
    if p <= lo || p >= lo << 1 || !is_prime(p) {
        return Err(Error::PrimeOutOfRange {
            p,
            lo: 4 * k,
            hi: 4 * k + 1,
        });
    }
    if t >= p {
        return Err(Error::PointOutOfRange { t, p });
    }
    Ok(())
}

/// Running fingerprint of the block currently streaming in.
#[derive(Clone, Debug)]
pub struct FingerprintAccumulator {
    p: u64,
    t: u64,
    acc: u64,
    t_pow: u64,
    seen: u64,
}

impl FingerprintAccumulator {
    /// Assumes (p, t) already validated via [`validate_point`].
    pub fn new(p: u64, t: u64) -> Self {
        FingerprintAccumulator {
            p,
            t,
            acc: 0,
            t_pow: 1 % p,
            seen: 0,
        }
    }

    pub fn feed_bit(&mut self, bit: bool) {
        if bit {
            self.acc = (self.acc + self.t_pow) % self.p;
        }
        self.t_pow = (self.t_pow * self.t) % self.p;
        self.seen += 1;
    }

    /// Returns the finished block's fingerprint and resets for the next one.
    pub fn finish_block(&mut self) -> u64 {
        let value = self.acc;
        self.acc = 0;
        self.t_pow = 1 % self.p;
        self.seen = 0;
        value
    }

    pub fn seen(&self) -> u64 {
        self.seen
    }
}

/// One-pass consistency check over the block sequence of a well-formed word:
/// within each repetition the trailing x copy must match the leading one,
/// and across repetitions the x and y blocks must repeat verbatim, all
/// checked through fingerprints at the point t.
#[derive(Clone, Debug)]
pub struct ConsistencyChecker {
    acc: FingerprintAccumulator,
    p: u64,
    last_x: Option<u64>,
    last_y: Option<u64>,
    all_pass: bool,
}

impl ConsistencyChecker {
    pub fn new(k: u32, p: u64, t: u64) -> Result<Self> {
        validate_point(k, p, t)?;
        Ok(ConsistencyChecker {
            acc: FingerprintAccumulator::new(p, t),
            p,
            last_x: None,
            last_y: None,
            all_pass: true,
        })
    }

    pub fn feed_bit(&mut self, bit: bool) {
        self.acc.feed_bit(bit);
    }

    pub fn end_block(&mut self, kind: BlockKind) {
        let fingerprint = self.acc.finish_block();
        match kind {
            BlockKind::X => {
                if let Some(prev) = self.last_x {
                    self.all_pass &= fingerprint == prev;
                }
                self.last_x = Some(fingerprint);
            }
            BlockKind::Y => {
                if let Some(prev) = self.last_y {
                    self.all_pass &= fingerprint == prev;
                }
                self.last_y = Some(fingerprint);
            }
            BlockKind::Z => {
                // the z block must equal this repetition's x block
                self.all_pass &= self.last_x == Some(fingerprint);
            }
        }
    }

    pub fn passes(&self) -> bool {
        self.all_pass
    }

    /// Live residues: t, the running power, the accumulator and the two
    /// retained block fingerprints: five field elements.
    pub fn cells(&self) -> u64 {
        5 * ternary_cells(self.p - 1)
    }
}

/// Standalone consistency check over a whole stream at a fixed point.
/// Returns false on words whose structure never completes.
pub fn check_consistency(stream: &mut TokenStream, k: u32, t: u64, p: u64) -> Result<bool> {
    validate_point(k, p, t)?;
    let mut scanner = FormatScanner::new();
    let mut checker = ConsistencyChecker::new(k, p, t)?;
    while let Some(tok) = stream.next_token() {
        match scanner.feed(tok) {
            ScanStep::Rejected => return Ok(false),
            ScanStep::Event(ScanEvent::HeaderDone { k: word_k }) => {
                if word_k != k {
                    return Err(Error::WordKMismatch {
                        expected: k,
                        found: word_k,
                    });
                }
            }
            ScanStep::Event(ScanEvent::BlockBit { bit, .. }) => checker.feed_bit(bit),
            ScanStep::Event(ScanEvent::BlockEnd { kind, .. }) => checker.end_block(kind),
            ScanStep::Continue => {}
        }
    }
    if scanner.finish().is_none() {
        return Ok(false);
    }
    Ok(checker.passes())
}
